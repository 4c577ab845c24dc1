#include "piston/exact_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "piston/errors.hpp"

namespace piston {

namespace {

// f written in terms of eps = rho - 1 so that the root stays accurate for
// weak shocks, where rho1 is close to 1.
double hugoniot_f_eps(double gamma, double eps) {
    const double one_minus_pow = -std::expm1(-(gamma + 1.0) * std::log1p(eps));
    return eps * one_minus_pow / (2.0 + eps);
}

// Root eps > 0 of hugoniot_f_eps(gamma, eps) = target for 0 < target < 1.
double solve_hugoniot(double gamma, double target) {
    double lo = 1e-12;
    while (hugoniot_f_eps(gamma, lo) > target && lo > std::numeric_limits<double>::min()) {
        lo *= 0.5;
    }
    // R doubled from 2, expressed as eps = R - 1.
    double hi = 1.0;
    while (hugoniot_f_eps(gamma, hi) <= target) {
        lo = hi;
        hi = 2.0 * (hi + 1.0) - 1.0;
        if (!std::isfinite(hi)) {
            throw NoIntegralSolution("shock root bracket diverged; target " + std::to_string(target));
        }
    }

    while (hi - lo > 1e-14 * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (hugoniot_f_eps(gamma, mid) > target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    double eps = 0.5 * (lo + hi);
    for (int k = 0; k < 3; ++k) {
        const double d = hugoniot_f_derivative(gamma, 1.0 + eps);
        if (!(d > 0.0)) break;
        const double next = eps - (hugoniot_f_eps(gamma, eps) - target) / d;
        if (!(next > 0.0) || !std::isfinite(next)) break;
        eps = next;
    }
    return eps;
}

void require_positive_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("sample needs t > 0, got " + std::to_string(t));
    }
}

LaxStatus classify_margins(double left_margin, double right_margin, double scale, double tol) {
    const double band = tol * std::max(1.0, scale);
    if (std::abs(left_margin) <= band && std::abs(right_margin) <= band) return LaxStatus::Equality;
    if (left_margin > band && right_margin > band) return LaxStatus::Strict;
    return LaxStatus::Violated;
}

}  // namespace

std::string_view to_string(SolutionKind k) {
    switch (k) {
        case SolutionKind::Shock: return "shock";
        case SolutionKind::Measure: return "measure";
        case SolutionKind::Rarefaction: return "rarefaction";
    }
    return "unknown";
}

std::string_view to_string(LaxStatus s) {
    switch (s) {
        case LaxStatus::Strict: return "strict";
        case LaxStatus::Equality: return "equality";
        case LaxStatus::Violated: return "violated";
    }
    return "unknown";
}

std::string_view to_string(RejectionReason r) {
    switch (r) {
        case RejectionReason::DensityAboveInitial: return "density_above_initial";
        case RejectionReason::Divergent: return "divergent";
        case RejectionReason::NegativeBase: return "negative_base";
    }
    return "unknown";
}

SolutionKind classify(const PistonScenario& sc) {
    if (sc.direction == Direction::Recede) return SolutionKind::Rarefaction;
    return sc.mach < critical_mach(sc.gamma) ? SolutionKind::Shock : SolutionKind::Measure;
}

double hugoniot_f(double gamma, double rho) {
    require_valid_gamma(gamma);
    if (!(rho > 0.0)) {
        throw DomainError("hugoniot_f: density must be positive, got " + std::to_string(rho));
    }
    if (std::isinf(rho)) return 1.0;
    return hugoniot_f_eps(gamma, rho - 1.0);
}

double hugoniot_f_derivative(double gamma, double rho) {
    require_valid_gamma(gamma);
    if (!(rho > 0.0)) {
        throw DomainError("hugoniot_f_derivative: density must be positive, got " + std::to_string(rho));
    }
    const double eps = rho - 1.0;
    const double one_minus_pow = -std::expm1(-(gamma + 1.0) * std::log1p(eps));
    const double num = 2.0 * one_minus_pow + eps * (rho + 1.0) * (gamma + 1.0) * std::pow(rho, -gamma - 2.0);
    return num / ((rho + 1.0) * (rho + 1.0));
}

ShockSolution solve_shock(const PistonScenario& sc) {
    if (sc.direction != Direction::Advance) {
        throw WrongBranch("solve_shock: receding piston has no shock solution, use solve_rarefaction");
    }
    const double crit = critical_mach(sc.gamma);
    if (!(sc.mach < crit)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "solve_shock: M0 = " << sc.mach << " >= critical " << crit
            << ", no integral solution; use solve_measure";
        throw NoIntegralSolution(msg.str());
    }
    const double target = 0.5 * (1.0 + sc.gamma) * sc.mach * sc.mach;
    const double eps = solve_hugoniot(sc.gamma, target);

    ShockSolution out;
    out.rho1 = 1.0 + eps;
    out.sigma = -1.0 / (out.rho1 - 1.0);
    out.upstream = {1.0, 1.0};
    out.downstream = {out.rho1, 0.0};
    return out;
}

MeasureConcentrationSolution solve_measure(const PistonScenario& sc) {
    if (sc.direction != Direction::Advance) {
        throw WrongBranch("solve_measure: receding piston has no measure solution");
    }
    if (sc.mach < critical_mach(sc.gamma)) {
        throw WrongBranch("solve_measure: M0 below critical, the integral (shock) solution applies");
    }
    MeasureConcentrationSolution out;
    out.w_p = 0.5 - 1.0 / ((1.0 + sc.gamma) * sc.mach * sc.mach);
    // Round-off at the threshold must not produce a negative force weight.
    if (out.w_p < 0.0) out.w_p = 0.0;
    return out;
}

RarefactionFanSolution::RarefactionFanSolution(double gamma, double mach) : gamma_(gamma), mach_(mach) {
    require_valid_gamma(gamma);
    if (gamma == 1.0) {
        throw DegenerateField(
            "receding piston with gamma = 1: the first field is linearly degenerate, the fan collapses to a "
            "contact discontinuity");
    }
    if (!(mach > 0.0) || !std::isfinite(mach)) {
        throw DomainError("Mach number must be positive and finite");
    }
    eta_head_ = -1.0 - 1.0 / mach;
    eta_tail_ = -0.5 * (gamma + 1.0) - 1.0 / mach;
    rho1_ = std::pow(0.5 * (mach * (gamma + 1.0) + 2.0), -2.0 / (gamma + 1.0));
}

State RarefactionFanSolution::fan(double eta) const {
    const double one_minus_g = 1.0 - gamma_;
    const double base = ((eta + 1.0) * (1.0 + gamma_) * mach_ + 2.0) / one_minus_g;
    const double rho = std::pow(base, -2.0 / (1.0 + gamma_));
    const double u = -1.0 + 2.0 * (eta + 1.0) / one_minus_g + 2.0 / (mach_ * one_minus_g);
    return {rho, u};
}

RarefactionFanSolution solve_rarefaction(const PistonScenario& sc) {
    if (sc.direction != Direction::Recede) {
        throw WrongBranch("solve_rarefaction: advancing piston, use solve_shock or solve_measure");
    }
    return RarefactionFanSolution(sc.gamma, sc.mach);
}

SelfSimilarSolution solve(const PistonScenario& sc) {
    switch (classify(sc)) {
        case SolutionKind::Shock: return {sc, solve_shock(sc)};
        case SolutionKind::Measure: return {sc, solve_measure(sc)};
        case SolutionKind::Rarefaction: return {sc, solve_rarefaction(sc)};
    }
    throw std::logic_error("unreachable solution kind");
}

std::pair<double, double> rankine_hugoniot_residual(const GasModel& g, const State& left, const State& right,
                                                    double sigma) {
    if (!(left.rho > 0.0) || !(right.rho > 0.0)) {
        throw DomainError("rankine_hugoniot_residual: densities must be positive");
    }
    const double mass = sigma * (right.rho - left.rho) - (right.rho * right.u - left.rho * left.u);
    // A (rho_l^-alpha - rho_r^-alpha) without cancelling two large terms.
    const double potential_jump =
        g.A() * std::pow(left.rho, -g.alpha()) * -std::expm1(-g.alpha() * std::log(right.rho / left.rho));
    const double velocity =
        sigma * (right.u - left.u) - (0.5 * (right.u - left.u) * (right.u + left.u) + potential_jump);
    return {mass, velocity};
}

LaxReport lax_report(const GasModel& g, const State& left, const State& right, double sigma, double tol) {
    const auto [l1L, l2L] = eigenvalues(g, left);
    const auto [l1R, l2R] = eigenvalues(g, right);
    LaxReport r;
    r.margin_family1 = {l1L - sigma, sigma - l1R};
    r.margin_family2 = {l2L - sigma, sigma - l2R};
    const double scale1 = std::max({std::abs(l1L), std::abs(l1R), std::abs(sigma)});
    const double scale2 = std::max({std::abs(l2L), std::abs(l2R), std::abs(sigma)});
    r.family1 = classify_margins(r.margin_family1.first, r.margin_family1.second, scale1, tol);
    r.family2 = classify_margins(r.margin_family2.first, r.margin_family2.second, scale2, tol);
    return r;
}

LimitReport high_mach_limits(double gamma, std::span<const double> machs) {
    require_valid_gamma(gamma);
    if (gamma == 1.0) {
        throw DegenerateField("high_mach_limits: fan formulas need gamma < 1");
    }
    static constexpr std::array<double, 2> kDefaultMachs{1e3, 1e6};
    if (machs.empty()) machs = kDefaultMachs;

    LimitReport rep;
    rep.gamma = gamma;
    rep.limit_eta_head = -1.0;
    rep.limit_eta_tail = -0.5 * (1.0 + gamma);
    // Probes inside (-1, -(1+gamma)/2]; the last one is the limiting tail edge.
    const double span = rep.limit_eta_tail + 1.0;
    rep.probe_etas = {-1.0 + 0.25 * span, -1.0 + 0.5 * span, rep.limit_eta_tail};

    for (const double m : machs) {
        const PistonScenario sc(gamma, m, Direction::Recede);
        const SelfSimilarSolution sol{sc, solve_rarefaction(sc)};
        const auto& fan = std::get<RarefactionFanSolution>(sol.wave);
        HighMachEntry e;
        e.mach = m;
        e.eta_head = fan.eta_head();
        e.eta_tail = fan.eta_tail();
        e.rho_tail = fan.fan(fan.eta_tail()).rho;
        e.p0 = sc.initial_pressure();
        for (const double eta : rep.probe_etas) {
            e.rho_at_probes.push_back(sample_state(sol, 1.0, eta).rho);
        }
        rep.entries.push_back(std::move(e));
    }
    rep.rho_tail_decreasing = true;
    for (std::size_t i = 1; i < rep.entries.size(); ++i) {
        const bool increasing_mach = rep.entries[i].mach > rep.entries[i - 1].mach;
        const bool decreasing_rho = rep.entries[i].rho_tail < rep.entries[i - 1].rho_tail;
        if (increasing_mach != decreasing_rho) rep.rho_tail_decreasing = false;
    }
    return rep;
}

RejectionReport second_family_diagnostic(const PistonScenario& sc, double divergence_tol) {
    RejectionReport r;
    const double g = sc.gamma;
    r.threshold_mach = 2.0 / (1.0 + g);
    r.base = 1.0 - 0.5 * (1.0 + g) * sc.mach;
    std::ostringstream msg;
    msg.precision(17);
    if (std::abs(sc.mach - r.threshold_mach) <= divergence_tol) {
        r.reason = RejectionReason::Divergent;
        r.rho1 = std::numeric_limits<double>::infinity();
        msg << "M0 = " << sc.mach << " is at 2/(1+gamma) = " << r.threshold_mach
            << ": the second-family boundary density diverges";
    } else if (r.base > 0.0) {
        r.reason = RejectionReason::DensityAboveInitial;
        r.rho1 = std::pow(r.base, -2.0 / (1.0 + g));
        msg << "second-family boundary density " << r.rho1
            << " exceeds the initial density 1, but a receding piston requires rho1 < 1";
    } else {
        r.reason = RejectionReason::NegativeBase;
        r.rho1 = std::numeric_limits<double>::quiet_NaN();
        msg << "base 1 - (1+gamma) M0 / 2 = " << r.base << " is negative: no physical boundary density";
    }
    r.message = msg.str();
    return r;
}

State sample_state(const SelfSimilarSolution& sol, double t, double x) {
    require_positive_time(t);
    if (x > 0.0) {
        throw DomainError("sample: gas occupies x <= 0 in the piston frame");
    }
    const double eta = x / t;
    return std::visit(
        [&](const auto& w) -> State {
            using W = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<W, ShockSolution>) {
                return eta < w.sigma ? w.upstream : w.downstream;
            } else if constexpr (std::is_same_v<W, MeasureConcentrationSolution>) {
                return State{1.0, 1.0};
            } else {
                if (eta < w.eta_head()) return State{1.0, -1.0};
                if (eta < w.eta_tail()) return w.fan(eta);
                return State{w.rho1(), 0.0};
            }
        },
        sol.wave);
}

SampleValue sample(const SelfSimilarSolution& sol, double t, double x) {
    require_positive_time(t);
    if (const auto* m = std::get_if<MeasureConcentrationSolution>(&sol.wave); m != nullptr && x == 0.0) {
        return BoundaryAtom{m->w_rho(t), m->w_p};
    }
    return sample_state(sol, t, x);
}

std::vector<double> wave_slopes(const SelfSimilarSolution& sol) {
    return std::visit(
        [](const auto& w) -> std::vector<double> {
            using W = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<W, ShockSolution>) {
                return {w.sigma};
            } else if constexpr (std::is_same_v<W, MeasureConcentrationSolution>) {
                return {};
            } else {
                return {w.eta_head(), w.eta_tail()};
            }
        },
        sol.wave);
}

}  // namespace piston
