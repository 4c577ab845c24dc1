#include <CLI11.hpp>
#include <iostream>

#include "piston/io.hpp"
#include "runner.hpp"

namespace {

using namespace piston;
using namespace piston::app;

int report(const RunOutcome& out) {
    for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& f : out.failures) std::cerr << "FAILED: " << f << '\n';
    std::cout << out.artifacts.size() << " artifact(s) written\n";
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Piston problem for the generalized Chaplygin gas: exact solutions and verification"};
    cli.require_subcommand(1);

    std::string config_path;
    auto* solve_cmd = cli.add_subcommand("solve", "Solve every scenario in a config file and write profiles");
    solve_cmd->add_option("--config", config_path, "Key-value config file")->required();
    auto* verify_cmd = cli.add_subcommand("verify", "Solve and check weak-form residuals");
    verify_cmd->add_option("--config", config_path, "Key-value config file")->required();
    auto* fvm_cmd = cli.add_subcommand("fvm", "Solve and cross-check with the finite-volume scheme");
    fvm_cmd->add_option("--config", config_path, "Key-value config file")->required();

    std::string gamma_spec;
    std::string mach_spec;
    std::string out_path;
    std::string direction = "advance";
    auto* phase_cmd = cli.add_subcommand("phase-diagram", "Classify a (gamma, M0) grid");
    phase_cmd->add_option("--gamma", gamma_spec, "a:b:n")->required();
    phase_cmd->add_option("--mach", mach_spec, "a:b:n")->required();
    phase_cmd->add_option("--out", out_path, "CSV output path")->required();
    phase_cmd->add_option("--direction", direction, "advance or recede")
        ->check(CLI::IsMember({"advance", "recede"}));

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*phase_cmd) {
            const auto gammas = parse_sweep(gamma_spec);
            const auto machs = parse_sweep(mach_spec);
            for (const double g : gammas) {
                if (!(g > 0.0 && g <= 1.0)) throw ConfigError("--gamma: every gamma must lie in (0, 1]");
            }
            for (const double m : machs) {
                if (!(m > 0.0)) throw ConfigError("--mach: every Mach number must be positive");
            }
            write_file_atomic(out_path, phase_diagram_csv(gammas, machs, direction_from_string(direction)));
            std::cout << "wrote " << out_path << '\n';
            return kExitOk;
        }

        RunConfig cfg = load_config(config_path);
        if (*verify_cmd) cfg.verify_weak = true;
        if (*fvm_cmd) cfg.verify_fvm = true;
        return report(run(cfg));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
}
