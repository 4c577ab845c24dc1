#include "piston/gas_model.hpp"

#include <cmath>
#include <string>

#include "piston/errors.hpp"

namespace piston {

namespace {

void require_positive_density(double rho, const char* op) {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw DomainError(std::string(op) + ": density must be positive and finite (vacuum is not a valid state), got " +
                          std::to_string(rho));
    }
}

}  // namespace

void require_valid_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw DomainError("gamma must lie in (0, 1], got " + std::to_string(gamma));
    }
}

GasModel::GasModel(double gamma, double s) : gamma_(gamma), s_(s), A_(0.0), alpha_(0.0) {
    require_valid_gamma(gamma);
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw DomainError("EOS coefficient s must be positive, got " + std::to_string(s));
    }
    A_ = s * gamma / (1.0 + gamma);
    alpha_ = gamma + 1.0;
}

GasModel GasModel::normalized(double gamma, double mach) {
    require_valid_gamma(gamma);
    if (!(mach > 0.0) || !std::isfinite(mach)) {
        throw DomainError("Mach number must be positive and finite, got " + std::to_string(mach));
    }
    return GasModel(gamma, 1.0 / (gamma * mach * mach));
}

double pressure(const GasModel& g, double rho) {
    require_positive_density(rho, "pressure");
    return -g.s() * std::pow(rho, -g.gamma());
}

double pressure_derivative(const GasModel& g, double rho) {
    require_positive_density(rho, "pressure_derivative");
    return g.s() * g.gamma() * std::pow(rho, -g.gamma() - 1.0);
}

double sound_speed(const GasModel& g, double rho) {
    require_positive_density(rho, "sound_speed");
    return std::sqrt(g.s() * g.gamma()) * std::pow(rho, -0.5 * (g.gamma() + 1.0));
}

double enthalpy(const GasModel& g, double rho) {
    require_positive_density(rho, "enthalpy");
    return -g.A() * std::pow(rho, -g.alpha());
}

std::pair<double, double> flux(const GasModel& g, const State& st) {
    return {st.rho * st.u, 0.5 * st.u * st.u + enthalpy(g, st.rho)};
}

double mach_number(double v, double c0) {
    if (!(c0 > 0.0)) {
        throw DomainError("reference sound speed must be positive, got " + std::to_string(c0));
    }
    return std::abs(v) / c0;
}

double critical_mach(double gamma) {
    require_valid_gamma(gamma);
    return std::sqrt(2.0 / (1.0 + gamma));
}

std::pair<double, double> eigenvalues(const GasModel& g, const State& st) {
    require_positive_density(st.rho, "eigenvalues");
    const double c = std::sqrt(g.A() * g.alpha()) * std::pow(st.rho, -0.5 * g.alpha());
    return {st.u - c, st.u + c};
}

std::pair<double, double> genuine_nonlinearity_indicator(const GasModel& g, const State& st) {
    require_positive_density(st.rho, "genuine_nonlinearity_indicator");
    const double mag =
        0.5 * (2.0 - g.alpha()) * std::sqrt(g.A() * g.alpha() * std::pow(st.rho, -(g.alpha() + 1.0)));
    return {-mag, mag};
}

}  // namespace piston
