#include "piston/fvm_validator.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "piston/errors.hpp"
#include "piston/io.hpp"

namespace piston {

namespace {

struct FaceFlux {
    double mass;
    double velocity;
};

// Position where `values` first crosses `level` scanning from the left,
// linearly interpolated between cell centers. NaN if never crossed.
double first_crossing(const Grid1D& grid, const std::vector<double>& values, double level) {
    for (int i = 0; i + 1 < grid.n_cells; ++i) {
        const double a = values[i] - level;
        const double b = values[i + 1] - level;
        if (a == 0.0) return grid.center(i);
        if ((a < 0.0) != (b < 0.0)) {
            const double w = a / (a - b);
            return grid.center(i) + w * grid.dx();
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

Grid1D::Grid1D(double x_min_, int n_cells_) : x_min(x_min_), n_cells(n_cells_) {
    if (!(x_min < 0.0)) throw DomainError("grid x_min must be negative");
    if (n_cells < 1) throw DomainError("grid needs at least one cell");
}

double FvmState::total_mass() const {
    double m = 0.0;
    for (const double r : rho) m += r;
    return m * grid.dx();
}

FvmState initial_fvm_state(const PistonScenario& sc, const Grid1D& grid, double cfl) {
    if (!(cfl > 0.0 && cfl < 1.0)) throw DomainError("CFL number must lie in (0, 1)");
    FvmState st;
    st.grid = grid;
    st.rho.assign(grid.n_cells, 1.0);
    st.u.assign(grid.n_cells, sc.initial_velocity());
    st.cfl = cfl;
    return st;
}

FvmState step(const FvmState& state, const GasModel& g, const StepOptions& opts) {
    const int n = state.grid.n_cells;
    const double dx = state.grid.dx();

    // Per-cell sound speed, signal speed and velocity flux, reused by both
    // adjacent faces.
    std::vector<double> speed(n);
    std::vector<double> vflux(n);
    double smax = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!(state.rho[i] > 0.0) || !std::isfinite(state.rho[i]) || !std::isfinite(state.u[i])) {
            std::ostringstream msg;
            msg << "input state is not admissible in cell " << i << ": rho = " << state.rho[i] << ", u = " << state.u[i];
            throw PositivityLoss(msg.str());
        }
        const double c = sound_speed(g, state.rho[i]);
        speed[i] = std::abs(state.u[i]) + c;
        vflux[i] = 0.5 * state.u[i] * state.u[i] + enthalpy(g, state.rho[i]);
        smax = std::max(smax, speed[i]);
    }
    double dt = state.cfl * dx / smax;
    if (opts.dt_max < dt) dt = opts.dt_max;

    auto face = [&](int l, int r, double rho_r, double u_r) -> FaceFlux {
        const double a = std::max(speed[l], speed[r]);
        return {0.5 * (state.rho[l] * state.u[l] + rho_r * u_r) - 0.5 * a * (rho_r - state.rho[l]),
                0.5 * (vflux[l] + vflux[r]) - 0.5 * a * (u_r - state.u[l])};
    };

    // faces[0] is the outflow boundary, faces[n] the wall. Both ghosts share
    // speed and velocity flux with the adjacent cell (|u| and u^2 are
    // unchanged by mirroring).
    std::vector<FaceFlux> faces(n + 1);
    faces[0] = face(0, 0, state.rho[0], state.u[0]);
    for (int i = 1; i < n; ++i) faces[i] = face(i - 1, i, state.rho[i], state.u[i]);
    faces[n] = face(n - 1, n - 1, state.rho[n - 1], -state.u[n - 1]);

    FvmState next = state;
    const double k = dt / dx;
    for (int i = 0; i < n; ++i) {
        next.rho[i] = state.rho[i] - k * (faces[i + 1].mass - faces[i].mass);
        next.u[i] = state.u[i] - k * (faces[i + 1].velocity - faces[i].velocity);
        if (!(next.rho[i] > 0.0) || !std::isfinite(next.rho[i]) || !std::isfinite(next.u[i])) {
            std::ostringstream msg;
            msg << "positivity lost in cell " << i << " (x = " << state.grid.center(i) << ") at t = " << state.time
                << ": rho = " << next.rho[i] << ", u = " << next.u[i];
            throw PositivityLoss(msg.str());
        }
        if (next.rho[i] > opts.density_cap) {
            std::ostringstream msg;
            msg << "density cap " << opts.density_cap << " exceeded in cell " << i << " at t = " << state.time + dt;
            throw PositivityLoss(msg.str());
        }
    }
    next.time = state.time + dt;
    next.last.dt = dt;
    next.last.courant = dt * smax / dx;
    next.last.boundary_mass_in = dt * (faces[0].mass - faces[n].mass);
    return next;
}

FvmState advance_to(FvmState state, const GasModel& g, double t_end, const StepOptions& opts) {
    double max_courant = 0.0;
    while (state.time < t_end) {
        StepOptions o = opts;
        o.dt_max = std::min(opts.dt_max, t_end - state.time);
        state = step(state, g, o);
        max_courant = std::max(max_courant, state.last.courant);
        // Guard against an endless loop from a sub-ulp remainder.
        if (t_end - state.time <= 1e-14 * std::max(1.0, t_end)) state.time = t_end;
    }
    state.last.courant = std::max(state.last.courant, max_courant);
    return state;
}

std::pair<double, double> l1_error(const FvmState& st, const SelfSimilarSolution& exact) {
    return l1_error(st, exact, 0.0);
}

std::pair<double, double> l1_error(const FvmState& st, const SelfSimilarSolution& exact, double band) {
    std::vector<double> edges;
    if (band > 0.0) {
        for (const double s : wave_slopes(exact)) edges.push_back(s * st.time);
    }
    double er = 0.0;
    double eu = 0.0;
    for (int i = 0; i < st.grid.n_cells; ++i) {
        const double x = st.grid.center(i);
        if (std::any_of(edges.begin(), edges.end(), [&](double e) { return std::abs(x - e) < band; })) continue;
        const State ex = st.time > 0.0 ? sample_state(exact, st.time, st.grid.center(i))
                                       : exact.scenario.initial_state();
        er += std::abs(st.rho[i] - ex.rho);
        eu += std::abs(st.u[i] - ex.u);
    }
    return {er * st.grid.dx(), eu * st.grid.dx()};
}

double default_x_min(const SelfSimilarSolution& sol, double t_end) {
    const auto slopes = wave_slopes(sol);
    const double lead = slopes.empty() ? 1.0 : std::max(1.0, std::abs(slopes.front()));
    return -(1.2 * lead * t_end + 0.1);
}

ComparisonReport run_and_compare(const PistonScenario& sc, double t_end, int n_cells, const CompareOptions& opts) {
    const SelfSimilarSolution exact = solve(sc);
    if (exact.kind() == SolutionKind::Measure) {
        throw WrongBranch("run_and_compare: supercritical scenarios have no pointwise exact solution; use "
                          "boundary_mass");
    }
    const GasModel g = sc.gas();

    ComparisonReport rep;
    rep.branch = std::string(to_string(exact.kind()));
    rep.gamma = sc.gamma;
    rep.mach = sc.mach;
    rep.t_end = t_end;

    double level = 0.0;
    double exact_position = 0.0;
    bool track_density = true;
    if (const auto* s = std::get_if<ShockSolution>(&exact.wave)) {
        level = 0.5 * (s->upstream.rho + s->downstream.rho);
        exact_position = s->sigma * t_end;
    } else {
        const auto& fan = std::get<RarefactionFanSolution>(exact.wave);
        track_density = false;
        level = -0.5;
        // u is affine in eta across the fan.
        const double u_head = fan.fan(fan.eta_head()).u;
        const double u_tail = fan.fan(fan.eta_tail()).u;
        const double eta = fan.eta_head() + (level - u_head) / (u_tail - u_head) * (fan.eta_tail() - fan.eta_head());
        exact_position = eta * t_end;
        rep.smooth_band = 0.25 * (fan.eta_tail() - fan.eta_head()) * t_end;
    }
    const double x_min = opts.x_min.value_or(default_x_min(exact, t_end));

    for (int k = 0; k < 3; ++k) {
        const int n = n_cells << k;
        ResolutionResult run;
        run.n_cells = n;
        const Grid1D grid(x_min, n);
        run.dx = grid.dx();
        try {
            FvmState st = advance_to(initial_fvm_state(sc, grid, opts.cfl), g, t_end);
            run.max_courant = st.last.courant;
            std::tie(run.l1_rho, run.l1_u) = l1_error(st, exact);
            run.l1 = run.l1_rho + run.l1_u;
            const auto [sr, su] = l1_error(st, exact, rep.smooth_band);
            run.l1_smooth = sr + su;
            run.wave_position = first_crossing(grid, track_density ? st.rho : st.u, level);
            run.wave_position_exact = exact_position;
            run.final_state = std::move(st);
        } catch (const PositivityLoss& e) {
            rep.failed = true;
            rep.message = e.what();
            return rep;
        }
        rep.runs.push_back(std::move(run));
    }
    for (std::size_t i = 1; i < rep.runs.size(); ++i) {
        rep.pairwise_orders.push_back(std::log2(rep.runs[i - 1].l1 / rep.runs[i].l1));
    }
    rep.observed_order = std::log(rep.runs.front().l1 / rep.runs.back().l1) / std::log(4.0);
    rep.observed_order_smooth = std::log(rep.runs.front().l1_smooth / rep.runs.back().l1_smooth) / std::log(4.0);
    return rep;
}

BoundaryMassRun run_with_snapshots(const PistonScenario& sc, const Grid1D& grid, double cfl,
                                   const std::vector<double>& times, double density_cap) {
    const GasModel g = sc.gas();
    BoundaryMassRun out;
    FvmState st = initial_fvm_state(sc, grid, cfl);
    std::vector<double> sorted = times;
    std::sort(sorted.begin(), sorted.end());
    StepOptions opts;
    opts.density_cap = density_cap;
    try {
        for (const double t : sorted) {
            if (t > st.time) st = advance_to(std::move(st), g, t, opts);
            out.snapshots.push_back(st);
        }
    } catch (const PositivityLoss& e) {
        out.capped = true;
        out.message = e.what();
    }
    return out;
}

std::vector<MassSample> boundary_mass(const std::vector<FvmState>& history, double delta) {
    std::vector<MassSample> out;
    out.reserve(history.size());
    for (const auto& st : history) {
        const double dx = st.grid.dx();
        double m = 0.0;
        // Cells fully inside [-delta, 0], plus the covered fraction of the
        // one straddling -delta.
        for (int i = st.grid.n_cells - 1; i >= 0; --i) {
            const double left = st.grid.x_min + i * dx;
            if (left >= -delta) {
                m += st.rho[i] * dx;
            } else {
                const double covered = std::max(0.0, left + dx + delta);
                m += st.rho[i] * covered;
                break;
            }
        }
        out.push_back({st.time, m});
    }
    return out;
}

double mass_slope(const std::vector<MassSample>& samples, double t_lo, double t_hi) {
    double n = 0.0, st = 0.0, sm = 0.0, stt = 0.0, stm = 0.0;
    for (const auto& s : samples) {
        if (s.t < t_lo || s.t > t_hi) continue;
        n += 1.0;
        st += s.t;
        sm += s.mass;
        stt += s.t * s.t;
        stm += s.t * s.mass;
    }
    const double denom = n * stt - st * st;
    if (n < 2.0 || denom == 0.0) throw DomainError("mass_slope: need two distinct sample times in the window");
    return (n * stm - st * sm) / denom;
}

std::string to_json(const ComparisonReport& r) {
    nlohmann::ordered_json j;
    j["branch"] = r.branch;
    j["gamma"] = r.gamma;
    j["mach"] = r.mach;
    j["t_end"] = r.t_end;
    auto runs = nlohmann::ordered_json::array();
    for (const auto& run : r.runs) {
        nlohmann::ordered_json e;
        e["n_cells"] = run.n_cells;
        e["dx"] = run.dx;
        e["l1_rho"] = run.l1_rho;
        e["l1_u"] = run.l1_u;
        e["l1"] = run.l1;
        e["l1_smooth"] = run.l1_smooth;
        e["wave_position"] = run.wave_position;
        e["wave_position_exact"] = run.wave_position_exact;
        e["wave_position_error"] = std::abs(run.wave_position - run.wave_position_exact);
        e["max_courant"] = run.max_courant;
        runs.push_back(std::move(e));
    }
    j["runs"] = std::move(runs);
    j["pairwise_orders"] = r.pairwise_orders;
    j["observed_order"] = r.observed_order;
    j["smooth_band"] = r.smooth_band;
    j["observed_order_smooth"] = r.observed_order_smooth;
    j["failed"] = r.failed;
    j["message"] = r.message;
    return j.dump(2);
}

std::string profile_csv(const FvmState& st, const SelfSimilarSolution& exact) {
    std::string out = "x,rho,u,rho_exact,u_exact\n";
    for (int i = 0; i < st.grid.n_cells; ++i) {
        const double x = st.grid.center(i);
        const State ex = st.time > 0.0 ? sample_state(exact, st.time, x) : exact.scenario.initial_state();
        out += format_double(x) + ',' + format_double(st.rho[i]) + ',' + format_double(st.u[i]) + ',' +
               format_double(ex.rho) + ',' + format_double(ex.u) + '\n';
    }
    return out;
}

}  // namespace piston
