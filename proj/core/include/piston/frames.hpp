#pragma once

#include <string_view>

#include "piston/gas_model.hpp"

namespace piston {

enum class Direction { Advance, Recede };

std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view name);

/// Piston problem in laboratory units: gas at rest with density rho0 fills
/// x < 0, the piston starts at x = 0 and follows x = v0 t.
/// v0 < 0 pushes into the gas.
struct PhysicalScenario {
    double rho0 = 1.0;
    double v0 = -1.0;
    double s_coeff = 1.0;
    double gamma = 1.0;

    GasModel gas() const { return GasModel(gamma, s_coeff); }
};

/// Normalized piston-frame problem: rho0 = 1, |v0| = 1, P0 = -1/(gamma M0^2),
/// wall at x = 0, gas on x < 0.
struct PistonScenario {
    double gamma = 1.0;
    double mach = 1.0;
    Direction direction = Direction::Advance;

    PistonScenario() = default;
    PistonScenario(double gamma, double mach, Direction direction);

    /// Initial gas velocity seen from the piston: +1 (toward the wall) when
    /// advancing, -1 when receding.
    double initial_velocity() const noexcept { return direction == Direction::Advance ? 1.0 : -1.0; }
    State initial_state() const noexcept { return {1.0, initial_velocity()}; }
    double initial_pressure() const noexcept { return -1.0 / (gamma * mach * mach); }
    GasModel gas() const { return GasModel::normalized(gamma, mach); }
};

struct FramePoint {
    State state;
    double t = 0.0;
    double x = 0.0;
};

/// Galilean shift into the frame moving with the piston: x' = x - v0 t,
/// u' = u - v0. The piston path maps onto x' = 0.
FramePoint galilean_to_piston_frame(const PhysicalScenario& phys, const State& st, double t, double x);

/// Inverse of galilean_to_piston_frame.
FramePoint piston_to_lab_frame(const PhysicalScenario& phys, const State& st, double t, double x_piston);

PistonScenario normalize(const PhysicalScenario& phys);

/// Rescales a normalized state to physical units, still in the piston frame.
State denormalize_state(const PhysicalScenario& phys, const State& st_norm);

/// Inverse of denormalize_state.
State normalize_state(const PhysicalScenario& phys, const State& st);

/// Self-similar coordinate of the normalized problem for a piston-frame point
/// of the physical problem: (x'/t) / |v0|.
double normalized_similarity_variable(const PhysicalScenario& phys, double t, double x_piston);

}  // namespace piston
