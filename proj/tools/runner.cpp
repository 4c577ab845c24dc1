#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "piston/errors.hpp"
#include "piston/fvm_validator.hpp"
#include "piston/io.hpp"
#include "piston/weak_verify.hpp"

namespace piston::app {

namespace {

using nlohmann::ordered_json;

double leftmost_slope(const SelfSimilarSolution& sol) {
    const auto slopes = wave_slopes(sol);
    return slopes.empty() ? -1.0 : std::min(-1.0, slopes.front());
}

void write(RunOutcome& out, const std::filesystem::path& path, const std::string& contents) {
    write_file_atomic(path, contents);
    out.artifacts.push_back(path);
}

void verify_weak(const RunConfig& cfg, const SelfSimilarSolution& sol, const std::filesystem::path& dir,
                 RunOutcome& out) {
    const ResidualReport rep = verify_solution(sol, cfg.weak.n_test_functions, cfg.weak.quadrature, cfg.seed);
    const auto path = dir / "weak_report.json";
    write(out, path, to_json(rep) + "\n");
    const bool small = rep.max_mass_res < cfg.weak.tolerance && rep.max_mom_res < cfg.weak.tolerance;
    if (!small || rep.non_converged > 0) {
        out.failures.push_back("weak residual check failed: " + path.string());
    }
    if (const auto* shock = std::get_if<ShockSolution>(&sol.wave)) {
        const EntropyReport ent = entropy_check(sol.scenario, *shock);
        if (!ent.lax.admissible()) out.failures.push_back("entropy check failed for " + dir.string());
    }
}

void verify_fvm(const RunConfig& cfg, const SelfSimilarSolution& sol, const std::filesystem::path& dir,
                RunOutcome& out) {
    const double x_min = cfg.fvm.x_min.value_or(default_x_min(sol, cfg.fvm.t_end));
    if (sol.kind() == SolutionKind::Measure) {
        const Grid1D grid(x_min, cfg.fvm.n_cells);
        std::vector<double> times;
        const int samples = 40;
        for (int k = 0; k <= samples; ++k) times.push_back(cfg.fvm.t_end * k / samples);
        const BoundaryMassRun run = run_with_snapshots(sol.scenario, grid, cfg.fvm.cfl, times);
        const auto masses = boundary_mass(run.snapshots, cfg.fvm.delta_cells * grid.dx());
        ordered_json j;
        j["branch"] = "measure";
        j["gamma"] = sol.scenario.gamma;
        j["mach"] = sol.scenario.mach;
        j["n_cells"] = cfg.fvm.n_cells;
        j["delta"] = cfg.fvm.delta_cells * grid.dx();
        j["capped"] = run.capped;
        j["message"] = run.message;
        auto arr = ordered_json::array();
        for (const auto& m : masses) arr.push_back({{"t", m.t}, {"mass", m.mass}});
        j["boundary_mass"] = std::move(arr);
        double slope = std::nan("");
        try {
            slope = mass_slope(masses, 0.25 * cfg.fvm.t_end, cfg.fvm.t_end);
        } catch (const DomainError&) {
        }
        j["slope"] = slope;
        write(out, dir / "fvm_boundary_mass.json", j.dump(2) + "\n");
        // The boundary-mass probe is a plausibility check only.
        if (!(std::abs(slope - 1.0) <= 0.15)) {
            out.warnings.push_back("boundary mass slope " + format_double(slope) + " is not within 15% of 1");
        }
        return;
    }
    CompareOptions opts;
    opts.x_min = x_min;
    opts.cfl = cfg.fvm.cfl;
    const ComparisonReport rep = run_and_compare(sol.scenario, cfg.fvm.t_end, cfg.fvm.n_cells, opts);
    write(out, dir / "fvm_report.json", to_json(rep) + "\n");
    if (!rep.runs.empty()) write(out, dir / "fvm_profile.csv", piston::profile_csv(rep.runs.back().final_state, sol));
    bool ok = !rep.failed && rep.runs.size() == 3;
    for (std::size_t i = 1; ok && i < rep.runs.size(); ++i) ok = rep.runs[i].l1 <= rep.runs[i - 1].l1;
    if (!ok) out.failures.push_back("finite-volume comparison failed: " + (dir / "fvm_report.json").string());
}

}  // namespace

std::string scenario_tag(const PistonScenario& sc) {
    return "g" + format_double(sc.gamma) + "_m" + format_double(sc.mach) + "_" + std::string(to_string(sc.direction));
}

std::string summary_json(const SelfSimilarSolution& sol, const std::vector<double>& t_samples) {
    ordered_json j;
    j["branch"] = std::string(to_string(sol.kind()));
    j["gamma"] = sol.scenario.gamma;
    j["mach"] = sol.scenario.mach;
    j["direction"] = std::string(to_string(sol.scenario.direction));
    j["critical_mach"] = critical_mach(sol.scenario.gamma);
    std::visit(
        [&](const auto& w) {
            using W = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<W, ShockSolution>) {
                j["rho1"] = w.rho1;
                j["sigma"] = w.sigma;
                const auto [r1, r2] = rankine_hugoniot_residual(sol.scenario.gas(), w.upstream, w.downstream, w.sigma);
                j["rh_residual"] = {r1, r2};
                const EntropyReport ent = entropy_check(sol.scenario, w);
                j["lax_family1"] = std::string(to_string(ent.lax.family1));
                j["lax_family2"] = std::string(to_string(ent.lax.family2));
            } else if constexpr (std::is_same_v<W, MeasureConcentrationSolution>) {
                j["w_p"] = w.w_p;
                auto arr = ordered_json::array();
                for (const double t : t_samples) arr.push_back({{"t", t}, {"w_rho", w.w_rho(t)}});
                j["w_rho"] = std::move(arr);
            } else {
                j["eta_head"] = w.eta_head();
                j["eta_tail"] = w.eta_tail();
                j["rho1"] = w.rho1();
            }
        },
        sol.wave);
    return j.dump(2) + "\n";
}

std::vector<double> default_x_samples(const SelfSimilarSolution& sol, double t) {
    const double eta_lo = 1.25 * leftmost_slope(sol);
    std::vector<double> xs;
    constexpr int n = 201;
    for (int i = 0; i < n; ++i) xs.push_back(i == n - 1 ? 0.0 : eta_lo * t * (1.0 - static_cast<double>(i) / (n - 1)));
    return xs;
}

std::string profile_csv(const SelfSimilarSolution& sol, double t, const std::vector<double>& xs) {
    const GasModel g = sol.scenario.gas();
    std::string out = "eta,x,t,rho,u,p\n";
    for (const double x : xs) {
        const State st = sample_state(sol, t, x);
        out += format_double(x / t) + ',' + format_double(x) + ',' + format_double(t) + ',' + format_double(st.rho) +
               ',' + format_double(st.u) + ',' + format_double(pressure(g, st.rho)) + '\n';
    }
    return out;
}

RunOutcome run(const RunConfig& cfg) {
    RunOutcome out;
    for (const double mach : cfg.machs) {
        const PistonScenario sc(cfg.gamma, mach, cfg.direction);
        const auto dir = cfg.output / scenario_tag(sc);
        SelfSimilarSolution sol;
        try {
            sol = solve(sc);
        } catch (const DegenerateField& e) {
            ordered_json j;
            j["branch"] = "rarefaction";
            j["gamma"] = sc.gamma;
            j["mach"] = sc.mach;
            j["direction"] = std::string(to_string(sc.direction));
            j["degenerate"] = true;
            j["message"] = e.what();
            write(out, dir / "summary.json", j.dump(2) + "\n");
            if (cfg.verify_weak || cfg.verify_fvm) {
                out.failures.push_back("cannot verify degenerate scenario " + dir.string());
            }
            continue;
        }

        write(out, dir / "summary.json", summary_json(sol, cfg.t_samples));
        for (const double t : cfg.t_samples) {
            const auto xs = cfg.x_samples.empty() ? default_x_samples(sol, t) : cfg.x_samples;
            write(out, dir / ("profile_t" + format_double(t) + ".csv"), profile_csv(sol, t, xs));
        }
        if (cfg.verify_weak) verify_weak(cfg, sol, dir, out);
        if (cfg.verify_fvm) verify_fvm(cfg, sol, dir, out);
    }
    out.exit_code = out.failures.empty() ? kExitOk : kExitVerificationFailed;
    return out;
}

std::string phase_diagram_csv(const std::vector<double>& gammas, const std::vector<double>& machs,
                              Direction direction) {
    std::string out = "gamma,mach,branch\n";
    for (const double g : gammas) {
        for (const double m : machs) {
            const PistonScenario sc(g, m, direction);
            out += format_double(g) + ',' + format_double(m) + ',' + std::string(to_string(classify(sc))) + '\n';
        }
    }
    return out;
}

}  // namespace piston::app
