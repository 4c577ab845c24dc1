#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "piston/frames.hpp"
#include "piston/gas_model.hpp"

namespace piston {

enum class SolutionKind { Shock, Measure, Rarefaction };

std::string_view to_string(SolutionKind k);

/// Advancing piston below the critical Mach number: constant states
/// (1, 1) | (rho1, 0) separated by a shock moving at sigma = -1/(rho1 - 1).
struct ShockSolution {
    double rho1 = 1.0;
    double sigma = 0.0;
    State upstream{1.0, 1.0};
    State downstream{1.0, 0.0};
};

/// Advancing piston at or above the critical Mach number: the undisturbed
/// state (1, 1) fills x < 0 and mass t accumulates on the piston, which also
/// carries the nonnegative force weight w_p.
struct MeasureConcentrationSolution {
    double w_p = 0.0;

    double w_rho(double t) const noexcept { return t; }
};

/// Receding piston: first-family centered fan between (1, -1) and (rho1, 0).
class RarefactionFanSolution {
public:
    RarefactionFanSolution(double gamma, double mach);

    double eta_head() const noexcept { return eta_head_; }
    double eta_tail() const noexcept { return eta_tail_; }
    double rho1() const noexcept { return rho1_; }

    /// Fan profile V(eta). Defined by the closed form for any eta; only
    /// meaningful on [eta_head, eta_tail].
    State fan(double eta) const;

    double gamma() const noexcept { return gamma_; }
    double mach() const noexcept { return mach_; }

private:
    double gamma_;
    double mach_;
    double eta_head_;
    double eta_tail_;
    double rho1_;
};

struct SelfSimilarSolution {
    PistonScenario scenario;
    std::variant<ShockSolution, MeasureConcentrationSolution, RarefactionFanSolution> wave;

    SolutionKind kind() const noexcept { return static_cast<SolutionKind>(wave.index()); }
};

/// Dirac part of the Measure branch seen at the piston.
struct BoundaryAtom {
    double w_rho = 0.0;
    double w_p = 0.0;
};

using SampleValue = std::variant<State, BoundaryAtom>;

SolutionKind classify(const PistonScenario& sc);

/// f(rho) = (1 - 1/rho)(1 - rho^(-gamma-1)) / (1 + 1/rho). The shock relation
/// reads f(rho1) = (1 + gamma) M0^2 / 2.
double hugoniot_f(double gamma, double rho);

/// Analytic derivative of hugoniot_f with respect to rho.
double hugoniot_f_derivative(double gamma, double rho);

ShockSolution solve_shock(const PistonScenario& sc);
MeasureConcentrationSolution solve_measure(const PistonScenario& sc);
RarefactionFanSolution solve_rarefaction(const PistonScenario& sc);

/// Classifies and constructs. Throws DegenerateField for a receding piston
/// with gamma == 1.
SelfSimilarSolution solve(const PistonScenario& sc);

/// Residuals of both jump relations for a discontinuity left | right moving
/// at sigma:  sigma [rho] - [rho u]  and  sigma [u] - [u^2/2 - A rho^(-alpha)].
std::pair<double, double> rankine_hugoniot_residual(const GasModel& g, const State& left, const State& right,
                                                    double sigma);

enum class LaxStatus { Strict, Equality, Violated };

std::string_view to_string(LaxStatus s);

struct LaxReport {
    /// lambda_k(left) - sigma and sigma - lambda_k(right) for k = 1, 2.
    std::pair<double, double> margin_family1;
    std::pair<double, double> margin_family2;
    LaxStatus family1 = LaxStatus::Violated;
    LaxStatus family2 = LaxStatus::Violated;

    /// True when at least one family admits the jump (strict or degenerate).
    bool admissible() const noexcept {
        return family1 != LaxStatus::Violated || family2 != LaxStatus::Violated;
    }
};

/// Lax inequalities lambda_k(left) > sigma > lambda_k(right) for both
/// families. Margins within tol (relative to the speeds involved) count as
/// equality.
LaxReport lax_report(const GasModel& g, const State& left, const State& right, double sigma, double tol = 1e-12);

struct HighMachEntry {
    double mach = 0.0;
    double eta_head = 0.0;
    double eta_tail = 0.0;
    double rho_tail = 0.0;
    double p0 = 0.0;
    /// Sampled density at the fixed probe slopes of the report.
    std::vector<double> rho_at_probes;
};

struct LimitReport {
    double gamma = 0.0;
    double limit_eta_head = -1.0;
    double limit_eta_tail = 0.0;
    std::vector<double> probe_etas;
    std::vector<HighMachEntry> entries;
    bool rho_tail_decreasing = false;
};

/// Receding-piston fan evaluated at growing Mach numbers, showing the
/// approach to vacuum ahead of the piston. Requires gamma < 1.
LimitReport high_mach_limits(double gamma, std::span<const double> machs = {});

enum class RejectionReason { DensityAboveInitial, Divergent, NegativeBase };

std::string_view to_string(RejectionReason r);

struct RejectionReport {
    double threshold_mach = 0.0;
    double base = 0.0;
    /// Candidate boundary density (1 - (1+gamma) M0/2)^(-2/(1+gamma));
    /// +inf when divergent and NaN when the base is negative.
    double rho1 = 0.0;
    RejectionReason reason = RejectionReason::DensityAboveInitial;
    std::string message;
};

/// Why a second-family fan cannot serve the receding piston. Mach numbers
/// within divergence_tol of 2/(1+gamma) are reported as divergent.
RejectionReport second_family_diagnostic(const PistonScenario& sc, double divergence_tol = 1e-6);

/// U(x, t) = V(x/t) for t > 0, x <= 0. On a wave edge the piston-side
/// limit is returned. For the Measure branch x == 0 yields the atom.
SampleValue sample(const SelfSimilarSolution& sol, double t, double x);

/// Pointwise state for the function-valued branches; for the Measure branch
/// the Lebesgue part (1, 1) is returned at every x <= 0.
State sample_state(const SelfSimilarSolution& sol, double t, double x);

/// Self-similar slopes at which the solution is discontinuous or has a kink,
/// sorted ascending and all <= 0.
std::vector<double> wave_slopes(const SelfSimilarSolution& sol);

}  // namespace piston
