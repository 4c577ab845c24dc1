#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "piston/exact_solver.hpp"

namespace piston {

/// Uniform mesh of [x_min, 0]; the last face is the wall.
struct Grid1D {
    double x_min = -1.0;
    int n_cells = 100;

    Grid1D() = default;
    Grid1D(double x_min, int n_cells);

    double dx() const noexcept { return -x_min / n_cells; }
    double center(int i) const noexcept { return x_min + (i + 0.5) * dx(); }
};

struct StepDiagnostics {
    double dt = 0.0;
    /// dt * max|lambda| / dx actually used.
    double courant = 0.0;
    /// Mass entering through the left face minus mass leaving through the
    /// wall during the step.
    double boundary_mass_in = 0.0;
};

/// Cell averages of the conserved pair (rho, u). The velocity itself is the
/// second conserved variable of this model, not the momentum.
struct FvmState {
    Grid1D grid;
    std::vector<double> rho;
    std::vector<double> u;
    double time = 0.0;
    double cfl = 0.45;
    StepDiagnostics last;

    double total_mass() const;
};

FvmState initial_fvm_state(const PistonScenario& sc, const Grid1D& grid, double cfl);

struct StepOptions {
    /// Upper bound on dt, used to land exactly on output times.
    double dt_max = std::numeric_limits<double>::infinity();
    /// Densities above this raise PositivityLoss with a cap diagnostic.
    double density_cap = std::numeric_limits<double>::infinity();
};

/// One explicit Rusanov update. Wall at x = 0 through a mirrored ghost
/// (rho, -u); zero-gradient outflow at x_min. Throws PositivityLoss.
FvmState step(const FvmState& state, const GasModel& g, const StepOptions& opts = {});

/// Advances to t_end exactly.
FvmState advance_to(FvmState state, const GasModel& g, double t_end, const StepOptions& opts = {});

struct ResolutionResult {
    int n_cells = 0;
    double dx = 0.0;
    double l1_rho = 0.0;
    double l1_u = 0.0;
    double l1 = 0.0;
    /// l1 restricted to cells farther than the report's smooth_band from
    /// every wave edge.
    double l1_smooth = 0.0;
    /// Detected and exact positions of the tracked level set (shock midpoint
    /// density, or fan mid-velocity u = -1/2).
    double wave_position = 0.0;
    double wave_position_exact = 0.0;
    double max_courant = 0.0;
    FvmState final_state;
};

struct ComparisonReport {
    std::string branch;
    double gamma = 0.0;
    double mach = 0.0;
    double t_end = 0.0;
    std::vector<ResolutionResult> runs;
    /// log2(e_n / e_2n) for consecutive resolutions.
    std::vector<double> pairwise_orders;
    /// log(e_n / e_4n) / log 4 over the first and last resolution.
    double observed_order = 0.0;
    /// Half-width of the band excluded around each wave edge for l1_smooth:
    /// a quarter of the fan width for the fan, zero for the shock.
    double smooth_band = 0.0;
    double observed_order_smooth = 0.0;
    bool failed = false;
    std::string message;
};

struct CompareOptions {
    /// Left edge of the mesh; default_x_min when unset.
    std::optional<double> x_min;
    double cfl = 0.45;
};

/// Mesh edge far enough left that no wave reaches it by t_end:
/// -(1.2 * max(1, |leftmost slope|) * t_end + 0.1).
double default_x_min(const SelfSimilarSolution& sol, double t_end);

/// Integrates at n, 2n and 4n cells and compares against the exact solution.
/// Requires a shock (subcritical advance) or fan (recede, gamma < 1) scenario.
ComparisonReport run_and_compare(const PistonScenario& sc, double t_end, int n_cells,
                                 const CompareOptions& opts = {});

/// L1 distance of a discrete state to the exact solution at the state's time,
/// using cell-center samples. At time 0 the initial data is used.
std::pair<double, double> l1_error(const FvmState& st, const SelfSimilarSolution& exact);

/// As l1_error, skipping cells whose center lies within band of a wave edge.
std::pair<double, double> l1_error(const FvmState& st, const SelfSimilarSolution& exact, double band);

struct MassSample {
    double t = 0.0;
    double mass = 0.0;
};

struct BoundaryMassRun {
    std::vector<FvmState> snapshots;
    bool capped = false;
    std::string message;
};

/// Runs an advancing scenario and keeps snapshots at the requested times.
/// Hitting the density cap ends the run early with capped = true.
BoundaryMassRun run_with_snapshots(const PistonScenario& sc, const Grid1D& grid, double cfl,
                                   const std::vector<double>& times, double density_cap = 1e6);

/// m(t) = integral of rho over [-delta, 0] for each snapshot.
std::vector<MassSample> boundary_mass(const std::vector<FvmState>& history, double delta);

/// Least-squares slope of m(t) over samples with t in [t_lo, t_hi].
double mass_slope(const std::vector<MassSample>& samples, double t_lo, double t_hi);

std::string to_json(const ComparisonReport& r);

/// Columns x,rho,u,rho_exact,u_exact.
std::string profile_csv(const FvmState& st, const SelfSimilarSolution& exact);

}  // namespace piston
