#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "piston/exact_solver.hpp"
#include "run_config.hpp"

namespace piston::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitConfigError = 2;

struct RunOutcome {
    int exit_code = kExitOk;
    std::vector<std::filesystem::path> artifacts;
    std::vector<std::string> failures;
    std::vector<std::string> warnings;
};

/// Directory name for one sweep entry, e.g. `g1_m0.6_advance`.
std::string scenario_tag(const PistonScenario& sc);

std::string summary_json(const SelfSimilarSolution& sol, const std::vector<double>& t_samples);

/// Columns eta,x,t,rho,u,p. The Measure branch reports its Lebesgue part at
/// every x; the atom weights live in the summary.
std::string profile_csv(const SelfSimilarSolution& sol, double t, const std::vector<double>& xs);

/// Default profile abscissae at time t: 201 points from 1.25 times the
/// leftmost wave slope (at least -1) to the piston.
std::vector<double> default_x_samples(const SelfSimilarSolution& sol, double t);

/// Solves every sweep entry and writes summary, profiles and the requested
/// verification reports under cfg.output.
RunOutcome run(const RunConfig& cfg);

/// Rows gamma,mach,branch for the full grid product, gamma-major.
std::string phase_diagram_csv(const std::vector<double>& gammas, const std::vector<double>& machs,
                              Direction direction = Direction::Advance);

}  // namespace piston::app
