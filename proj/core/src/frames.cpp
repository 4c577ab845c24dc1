#include "piston/frames.hpp"

#include <cmath>
#include <string>

#include "piston/errors.hpp"

namespace piston {

namespace {

void validate(const PhysicalScenario& phys) {
    require_valid_gamma(phys.gamma);
    if (!(phys.rho0 > 0.0)) {
        throw DomainError("rho0 must be positive, got " + std::to_string(phys.rho0));
    }
    if (!(phys.s_coeff > 0.0)) {
        throw DomainError("s_coeff must be positive, got " + std::to_string(phys.s_coeff));
    }
    if (phys.v0 == 0.0 || !std::isfinite(phys.v0)) {
        throw DegenerateScenario("piston speed v0 must be nonzero and finite");
    }
}

}  // namespace

std::string_view to_string(Direction d) {
    return d == Direction::Advance ? "advance" : "recede";
}

Direction direction_from_string(std::string_view name) {
    if (name == "advance") return Direction::Advance;
    if (name == "recede") return Direction::Recede;
    throw std::invalid_argument("direction must be 'advance' or 'recede', got '" + std::string(name) + "'");
}

PistonScenario::PistonScenario(double gamma_, double mach_, Direction direction_)
    : gamma(gamma_), mach(mach_), direction(direction_) {
    require_valid_gamma(gamma);
    if (!(mach > 0.0) || !std::isfinite(mach)) {
        throw DomainError("Mach number must be positive and finite, got " + std::to_string(mach));
    }
}

FramePoint galilean_to_piston_frame(const PhysicalScenario& phys, const State& st, double t, double x) {
    return {{st.rho, st.u - phys.v0}, t, x - phys.v0 * t};
}

FramePoint piston_to_lab_frame(const PhysicalScenario& phys, const State& st, double t, double x_piston) {
    return {{st.rho, st.u + phys.v0}, t, x_piston + phys.v0 * t};
}

PistonScenario normalize(const PhysicalScenario& phys) {
    validate(phys);
    const double c0 = sound_speed(phys.gas(), phys.rho0);
    const double mach = mach_number(phys.v0, c0);
    return {phys.gamma, mach, phys.v0 < 0.0 ? Direction::Advance : Direction::Recede};
}

State denormalize_state(const PhysicalScenario& phys, const State& st_norm) {
    return {phys.rho0 * st_norm.rho, std::abs(phys.v0) * st_norm.u};
}

State normalize_state(const PhysicalScenario& phys, const State& st) {
    return {st.rho / phys.rho0, st.u / std::abs(phys.v0)};
}

double normalized_similarity_variable(const PhysicalScenario& phys, double t, double x_piston) {
    if (!(t > 0.0)) {
        throw DomainError("similarity variable needs t > 0");
    }
    return x_piston / (t * std::abs(phys.v0));
}

}  // namespace piston
