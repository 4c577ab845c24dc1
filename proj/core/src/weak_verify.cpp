#include "piston/weak_verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <json.hpp>
#include <random>

#include "piston/errors.hpp"

namespace piston {

namespace {

double bump(double s) noexcept {
    if (s <= -1.0 || s >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return q * q;
}

double bump_derivative(double s) noexcept {
    if (s <= -1.0 || s >= 1.0) return 0.0;
    return -4.0 * s * (1.0 - s * s);
}

double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Midpoint rule with n cells on [a, b].
template <class F>
double midpoint(double a, double b, int n, F&& f) {
    if (!(b > a)) return 0.0;
    const double h = (b - a) / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f(a + (i + 0.5) * h);
    return sum * h;
}

struct Interval {
    double lo;
    double hi;
    bool empty() const { return !(hi > lo); }
};

// Lebesgue part over Omega intersected with supp(phi): the midpoint tensor
// rule in t, and in x a midpoint rule split at the wave positions so each
// piece sees a smooth integrand.
template <class StateAt>
Residual lebesgue_part(const GasModel& g, const TestFunction& phi, int n, const std::vector<double>& slopes,
                       StateAt&& state_at) {
    const Interval ts{std::max(0.0, phi.t_min()), phi.t_max()};
    const Interval xs{phi.x_min(), std::min(0.0, phi.x_max())};
    Residual r;
    if (ts.empty() || xs.empty()) return r;

    const double ht = (ts.hi - ts.lo) / n;
    const double width = xs.hi - xs.lo;
    std::vector<double> cuts;
    cuts.reserve(slopes.size() + 2);
    for (int j = 0; j < n; ++j) {
        const double t = ts.lo + (j + 0.5) * ht;
        const double st = (t - phi.t_center) / phi.r_t;
        const double bt = bump(st);
        const double dbt = bump_derivative(st) / phi.r_t;

        cuts.clear();
        cuts.push_back(xs.lo);
        for (const double s : slopes) {
            const double xw = s * t;
            if (xw > xs.lo && xw < xs.hi) cuts.push_back(xw);
        }
        cuts.push_back(xs.hi);

        double mass_row = 0.0;
        double mom_row = 0.0;
        for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
            const double a = cuts[p];
            const double b = cuts[p + 1];
            // Fan pieces shrink like t near the origin while their x-derivatives
            // grow like 1/t, so each piece keeps a fixed share of cells.
            const int cells = std::max(std::max(1, n / 4), static_cast<int>(std::lround(n * (b - a) / width)));
            const double hx = (b - a) / cells;
            for (int i = 0; i < cells; ++i) {
                const double x = a + (i + 0.5) * hx;
                const double sx = (x - phi.x_center) / phi.r_x;
                const double phi_t = dbt * bump(sx);
                const double phi_x = bt * bump_derivative(sx) / phi.r_x;
                const State u = state_at(t, x);
                mass_row += (u.rho * phi_t + u.rho * u.u * phi_x) * hx;
                mom_row += (u.u * phi_t + (0.5 * u.u * u.u + enthalpy(g, u.rho)) * phi_x) * hx;
            }
        }
        r.mass += mass_row * ht;
        r.momentum += mom_row * ht;
    }
    return r;
}

// Initial-data line integrals: rho0 phi(0, x) and u0 phi(0, x) over x < 0.
Residual initial_line(const State& initial, const TestFunction& phi, int n) {
    Residual r;
    if (!(phi.t_min() < 0.0)) return r;
    const double line = midpoint(phi.x_min(), std::min(0.0, phi.x_max()), n,
                                 [&](double x) { return phi.value(0.0, x); });
    r.mass = initial.rho * line;
    r.momentum = initial.u * line;
    return r;
}

}  // namespace

double TestFunction::value(double t, double x) const noexcept {
    return bump((t - t_center) / r_t) * bump((x - x_center) / r_x);
}

double TestFunction::dt(double t, double x) const noexcept {
    return bump_derivative((t - t_center) / r_t) / r_t * bump((x - x_center) / r_x);
}

double TestFunction::dx(double t, double x) const noexcept {
    return bump((t - t_center) / r_t) * bump_derivative((x - x_center) / r_x) / r_x;
}

std::vector<TestFunction> make_test_family(std::size_t n, std::uint64_t seed, const TestFamilyBox& box) {
    std::mt19937_64 rng(seed);
    std::vector<TestFunction> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        TestFunction f;
        f.t_center = box.t_lo + (box.t_hi - box.t_lo) * unit_uniform(rng);
        f.x_center = box.x_lo + (box.x_hi - box.x_lo) * unit_uniform(rng);
        f.r_t = box.r_lo + (box.r_hi - box.r_lo) * unit_uniform(rng);
        f.r_x = box.r_lo + (box.r_hi - box.r_lo) * unit_uniform(rng);
        out.push_back(f);
    }
    return out;
}

DiracOnCurve DiracOnCurve::vertical(double c, std::function<double(double)> weight, double t_end) {
    return {[c](double) { return c; }, [](double) { return 0.0; }, std::move(weight), t_end};
}

double dirac_pairing(const DiracOnCurve& d, const std::function<double(double, double)>& field) {
    if (!(d.t_end > 0.0)) return 0.0;
    auto integrand = [&](double t) {
        const double w = d.weight(t);
        if (!std::isfinite(w)) {
            throw DomainError("dirac_pairing: non-finite weight at t = " + std::to_string(t));
        }
        if (w == 0.0) return 0.0;
        const double slope = d.slope(t);
        return field(t, d.curve(t)) * w * std::sqrt(slope * slope + 1.0);
    };
    double error = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, d.t_end, 30, 1e-13, &error);
    if (!(error <= 1e-10)) {
        throw DomainError("dirac_pairing: quadrature did not reach 1e-10 (estimate " + std::to_string(error) + ")");
    }
    return value;
}

double dirac_pairing(const DiracOnCurve& d, const TestFunction& phi) {
    // Restricting to the time support keeps the integrand smooth in t apart
    // from kinks where the curve leaves the x-support.
    DiracOnCurve clipped = d;
    const double t0 = std::max(0.0, phi.t_min());
    const double t1 = std::min(d.t_end, phi.t_max());
    if (!(t1 > t0)) return 0.0;
    clipped.curve = [&d, t0](double s) { return d.curve(t0 + s); };
    clipped.slope = [&d, t0](double s) { return d.slope(t0 + s); };
    clipped.weight = [&d, t0](double s) { return d.weight(t0 + s); };
    clipped.t_end = t1 - t0;
    return dirac_pairing(clipped, [&phi, t0](double s, double x) { return phi.value(t0 + s, x); });
}

Residual integral_weak_residual(const SelfSimilarSolution& sol, const TestFunction& phi, int n) {
    if (sol.kind() == SolutionKind::Measure) {
        throw WrongBranch("integral_weak_residual: measure solutions have no a.e. function form");
    }
    if (n < 1) throw DomainError("quadrature needs at least one cell");
    const GasModel g = sol.scenario.gas();
    Residual r = lebesgue_part(g, phi, n, wave_slopes(sol),
                               [&](double t, double x) { return sample_state(sol, t, x); });

    const Residual init = initial_line(sol.scenario.initial_state(), phi, n);
    r.mass += init.mass;
    r.momentum += init.momentum;

    // Wall trace: the velocity flux at x = 0 reduces to the potential term
    // because u = 0 there. The density trace is taken from the piston side.
    if (phi.x_min() < 0.0 && phi.x_max() > 0.0) {
        const double wall = midpoint(std::max(0.0, phi.t_min()), phi.t_max(), n, [&](double t) {
            return enthalpy(g, sample_state(sol, t, 0.0).rho) * phi.value(t, 0.0);
        });
        r.momentum -= wall;
    }
    return r;
}

MeasureWeights MeasureWeights::from(const MeasureConcentrationSolution& m) {
    const double wp = m.w_p;
    return {[m](double t) { return m.w_rho(t); }, [wp](double) { return wp; }};
}

Residual measure_weak_residual(const PistonScenario& sc, const MeasureWeights& weights, const TestFunction& phi,
                               int n) {
    if (n < 1) throw DomainError("quadrature needs at least one cell");
    const GasModel g = sc.gas();
    const State bulk = sc.initial_state();
    Residual r = lebesgue_part(g, phi, n, {}, [&](double, double) { return bulk; });

    const Residual init = initial_line(bulk, phi, n);
    r.mass += init.mass;
    r.momentum += init.momentum;

    if (phi.x_min() < 0.0 && phi.x_max() > 0.0 && phi.t_max() > 0.0) {
        // Partial derivatives are only piecewise smooth in t, so integrate
        // over the time support alone.
        const double t0 = std::max(0.0, phi.t_min());
        const DiracOnCurve density =
            DiracOnCurve::vertical(0.0, [&weights, t0](double s) { return weights.w_rho(t0 + s); }, phi.t_max() - t0);
        r.mass += dirac_pairing(density, [&phi, t0](double s, double x) { return phi.dt(t0 + s, x); });
        r.momentum -= dirac_pairing(DiracOnCurve::vertical(0.0, weights.w_p, phi.t_max()), phi);
    }
    return r;
}

EntropyReport entropy_check(const GasModel& g, const ShockSolution& shock) {
    EntropyReport rep;
    rep.lax = lax_report(g, shock.upstream, shock.downstream, shock.sigma);
    const bool f1 = rep.lax.family1 != LaxStatus::Violated;
    const bool f2 = rep.lax.family2 != LaxStatus::Violated;
    if (f1 && !f2) rep.admissible_family = 1;
    if (f2 && !f1) rep.admissible_family = 2;
    rep.degenerate = rep.lax.family1 == LaxStatus::Equality || rep.lax.family2 == LaxStatus::Equality;
    return rep;
}

EntropyReport entropy_check(const PistonScenario& sc, const ShockSolution& shock) {
    return entropy_check(sc.gas(), shock);
}

ResidualReport verify_solution(const SelfSimilarSolution& sol, std::size_t n_test_functions, int quadrature,
                               std::uint64_t seed, const TestFamilyBox& box) {
    ResidualReport rep;
    rep.branch = std::string(to_string(sol.kind()));
    rep.gamma = sol.scenario.gamma;
    rep.mach = sol.scenario.mach;
    rep.n_test_functions = n_test_functions;
    rep.quadrature = quadrature;
    rep.seed = seed;

    const auto family = make_test_family(n_test_functions, seed, box);
    const auto* measure = std::get_if<MeasureConcentrationSolution>(&sol.wave);
    const MeasureWeights weights = measure ? MeasureWeights::from(*measure) : MeasureWeights{};
    auto eval = [&](const TestFunction& phi, int n) {
        return measure ? measure_weak_residual(sol.scenario, weights, phi, n) : integral_weak_residual(sol, phi, n);
    };

    double max_coarse = 0.0;
    double max_fine = 0.0;
    double sum_mass = 0.0;
    double sum_mom = 0.0;
    for (const auto& phi : family) {
        const Residual c = eval(phi, quadrature);
        const Residual f = eval(phi, 2 * quadrature);
        rep.coarse.push_back(c);
        rep.fine.push_back(f);
        rep.max_mass_res = std::max(rep.max_mass_res, std::abs(c.mass));
        rep.max_mom_res = std::max(rep.max_mom_res, std::abs(c.momentum));
        sum_mass += c.mass * c.mass;
        sum_mom += c.momentum * c.momentum;
        const double cm = std::max(std::abs(c.mass), std::abs(c.momentum));
        const double fm = std::max(std::abs(f.mass), std::abs(f.momentum));
        max_coarse = std::max(max_coarse, cm);
        max_fine = std::max(max_fine, fm);
        for (const auto& [cv, fv] : {std::pair{c.mass, f.mass}, std::pair{c.momentum, f.momentum}}) {
            if (std::abs(cv) > kResidualFloor && std::abs(fv) > 0.9 * std::abs(cv)) ++rep.non_converged;
        }
    }
    if (!family.empty()) {
        rep.rms_mass_res = std::sqrt(sum_mass / static_cast<double>(family.size()));
        rep.rms_mom_res = std::sqrt(sum_mom / static_cast<double>(family.size()));
    }
    rep.refinement_ratio = max_coarse > kResidualFloor ? max_fine / max_coarse : 0.0;
    return rep;
}

std::string to_json(const ResidualReport& r) {
    nlohmann::ordered_json j;
    j["branch"] = r.branch;
    j["gamma"] = r.gamma;
    j["mach"] = r.mach;
    j["n_test_functions"] = r.n_test_functions;
    j["quadrature"] = r.quadrature;
    j["max_mass_res"] = r.max_mass_res;
    j["max_mom_res"] = r.max_mom_res;
    j["refinement_ratio"] = r.refinement_ratio;
    j["seed"] = r.seed;
    return j.dump(2);
}

}  // namespace piston
