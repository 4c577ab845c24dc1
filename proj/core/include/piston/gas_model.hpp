#pragma once

#include <utility>

namespace piston {

/// Generalized Chaplygin gas P = -s rho^(-gamma), 0 < gamma <= 1.
///
/// The velocity equation of the model is written with the enthalpy-like
/// potential -A rho^(-alpha), where A = s gamma / (1 + gamma) and
/// alpha = gamma + 1; both are derived once at construction.
class GasModel {
public:
    GasModel(double gamma, double s);

    /// Model in piston-normalized units: rho0 = 1, |v0| = 1, so that the
    /// undisturbed sound speed equals 1 / mach.
    static GasModel normalized(double gamma, double mach);

    double gamma() const noexcept { return gamma_; }
    double s() const noexcept { return s_; }
    double A() const noexcept { return A_; }
    double alpha() const noexcept { return alpha_; }

private:
    double gamma_;
    double s_;
    double A_;
    double alpha_;
};

struct State {
    double rho = 1.0;
    double u = 0.0;

    friend bool operator==(const State&, const State&) = default;
};

double pressure(const GasModel& g, double rho);

/// dP/drho, evaluated analytically.
double pressure_derivative(const GasModel& g, double rho);

double sound_speed(const GasModel& g, double rho);

/// Potential term of the velocity flux, integral of P'(s)/s ds = -A rho^(-alpha).
double enthalpy(const GasModel& g, double rho);

/// Conservative flux (rho u, u^2/2 - A rho^(-alpha)).
std::pair<double, double> flux(const GasModel& g, const State& st);

double mach_number(double v, double c0);

/// sqrt(2 / (1 + gamma)); the advancing piston has an integral solution
/// only below this value.
double critical_mach(double gamma);

/// Characteristic speeds (lambda1, lambda2) = u -/+ sqrt(A alpha) rho^(-alpha/2).
std::pair<double, double> eigenvalues(const GasModel& g, const State& st);

/// Directional derivatives grad(lambda_i) . r_i for the two families.
/// Both vanish exactly when gamma == 1.
std::pair<double, double> genuine_nonlinearity_indicator(const GasModel& g, const State& st);

/// Throws DomainError unless 0 < gamma <= 1.
void require_valid_gamma(double gamma);

}  // namespace piston
