#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "piston/exact_solver.hpp"

namespace piston {

/// Tensor-product bump phi(t, x) = b((t - t_c)/r_t) b((x - x_c)/r_x) with
/// b(s) = (1 - s^2)^2 on |s| < 1 and 0 elsewhere. C^1, max phi = 1.
struct TestFunction {
    double t_center = 0.0;
    double x_center = 0.0;
    double r_t = 1.0;
    double r_x = 1.0;

    double value(double t, double x) const noexcept;
    double dt(double t, double x) const noexcept;
    double dx(double t, double x) const noexcept;

    double t_min() const noexcept { return t_center - r_t; }
    double t_max() const noexcept { return t_center + r_t; }
    double x_min() const noexcept { return x_center - r_x; }
    double x_max() const noexcept { return x_center + r_x; }
};

/// Sampling box for randomized test-function centers and radii.
struct TestFamilyBox {
    double t_lo = 0.0, t_hi = 1.2;
    double x_lo = -1.2, x_hi = 0.2;
    double r_lo = 0.2, r_hi = 0.6;
};

/// Deterministic family of n bumps drawn from a 64-bit Mersenne twister.
/// The raw generator output is mapped to [0, 1) by hand so the family does
/// not depend on the standard library's distribution implementation.
std::vector<TestFunction> make_test_family(std::size_t n, std::uint64_t seed, const TestFamilyBox& box = {});

/// Weighted Dirac measure on the Lipschitz curve x = x(t), 0 <= t < t_end.
struct DiracOnCurve {
    std::function<double(double)> curve;
    std::function<double(double)> slope;
    std::function<double(double)> weight;
    double t_end = 0.0;

    /// Weight w on the vertical line x = c (the piston path in its own frame).
    static DiracOnCurve vertical(double c, std::function<double(double)> weight, double t_end);
};

/// Pairing with an arbitrary continuous field g(t, x):
/// integral over [0, t_end) of g(t, x(t)) w(t) sqrt(x'(t)^2 + 1) dt.
double dirac_pairing(const DiracOnCurve& d, const std::function<double(double, double)>& field);

double dirac_pairing(const DiracOnCurve& d, const TestFunction& phi);

struct Residual {
    double mass = 0.0;
    double momentum = 0.0;
};

/// Signed residuals of the integral weak formulation (mass and velocity
/// equations, including the wall trace term and the initial-data line) for
/// a function-valued solution. n is the number of midpoint cells per
/// direction over the support of phi.
Residual integral_weak_residual(const SelfSimilarSolution& sol, const TestFunction& phi, int n);

/// Weights of the measure ansatz; defaults reproduce solve_measure.
struct MeasureWeights {
    std::function<double(double)> w_rho;
    std::function<double(double)> w_p;

    static MeasureWeights from(const MeasureConcentrationSolution& m);
};

/// Residuals of the measure formulation for the ansatz: Lebesgue part (1, 1)
/// on x < 0, density Dirac w_rho on x = 0 and force Dirac w_p on x = 0.
Residual measure_weak_residual(const PistonScenario& sc, const MeasureWeights& weights, const TestFunction& phi,
                               int n);

struct EntropyReport {
    LaxReport lax;
    /// 1 or 2 when exactly that family admits the jump, 0 otherwise.
    int admissible_family = 0;
    bool degenerate = false;
};

EntropyReport entropy_check(const GasModel& g, const ShockSolution& shock);
EntropyReport entropy_check(const PistonScenario& sc, const ShockSolution& shock);

struct ResidualReport {
    std::string branch;
    double gamma = 0.0;
    double mach = 0.0;
    std::size_t n_test_functions = 0;
    int quadrature = 0;
    std::uint64_t seed = 0;

    std::vector<Residual> coarse;  ///< at `quadrature` cells per direction
    std::vector<Residual> fine;    ///< at 2 * `quadrature`

    double max_mass_res = 0.0;
    double max_mom_res = 0.0;
    double rms_mass_res = 0.0;
    double rms_mom_res = 0.0;
    /// max residual at 2n over max residual at n (0 when already at the floor).
    double refinement_ratio = 0.0;
    /// Test functions whose residual shrank by less than the 0.9 factor while
    /// above the floor.
    std::size_t non_converged = 0;
};

inline constexpr double kResidualFloor = 1e-10;

/// Runs the appropriate residual (integral or measure) over a seeded family at
/// n and 2n cells and aggregates.
ResidualReport verify_solution(const SelfSimilarSolution& sol, std::size_t n_test_functions, int quadrature,
                               std::uint64_t seed, const TestFamilyBox& box = {});

std::string to_json(const ResidualReport& r);

}  // namespace piston
