#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "piston/frames.hpp"

namespace piston::app {

/// Invalid configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FvmSettings {
    int n_cells = 400;
    double cfl = 0.45;
    double t_end = 0.5;
    int delta_cells = 5;
    std::optional<double> x_min;  ///< chosen from the wave speeds when unset
};

struct WeakSettings {
    std::size_t n_test_functions = 50;
    int quadrature = 512;
    double tolerance = 5e-6;
};

struct RunConfig {
    double gamma = 1.0;
    std::vector<double> machs;
    Direction direction = Direction::Advance;
    std::vector<double> t_samples{1.0};
    std::vector<double> x_samples;
    bool verify_weak = false;
    bool verify_fvm = false;
    FvmSettings fvm;
    WeakSettings weak;
    std::filesystem::path output = "piston_out";
    std::uint64_t seed = 20241015;
};

/// `a:b:n` (n evenly spaced points, inclusive), `v1,v2,...`, or a single value.
std::vector<double> parse_sweep(const std::string& spec);

/// Parses the flat `key = value` format; `#` starts a comment. Errors carry
/// the line number and field name.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace piston::app
