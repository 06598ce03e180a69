// Unit-commitment best response: per-block dispatch, commitment binaries,
// start/stop cost epigraph rows, ramping against the pre-horizon operating
// point, and the compact min-up/down window constraints.

#include <cmath>
#include <string>
#include <vector>

#include "xorbid/agents/agents.hpp"
#include "xorbid/errors.hpp"
#include "xorbid/solver/lp.hpp"

namespace xorbid::agents {

double ThermalGeneratorParams::capacity() const {
    double c = 0.0;
    for (double w : block_width) c += w;
    return c;
}

int ThermalGeneratorParams::obligated_on_hours() const {
    if (!initially_on()) return 0;
    return std::max(0, min_up_time - initial_on_hours);
}

int ThermalGeneratorParams::obligated_off_hours() const {
    if (initially_on()) return 0;
    if (initial_off_hours == 0) return 0;  // off with no pending obligation
    return std::max(0, min_down_time - initial_off_hours);
}

void ThermalGeneratorParams::validate() const {
    if (block_marginal_cost.size() != block_width.size() || block_width.empty()) {
        throw ValidationError("generator: need matching, non-empty block cost/width lists");
    }
    for (size_t k = 0; k < block_width.size(); ++k) {
        if (!(block_width[k] > 0.0) || !std::isfinite(block_width[k])) {
            throw ValidationError("generator: block widths must be positive");
        }
        if (!(block_marginal_cost[k] >= 0.0) || !std::isfinite(block_marginal_cost[k])) {
            throw ValidationError("generator: marginal costs must be nonnegative");
        }
        if (k > 0 && block_marginal_cost[k] < block_marginal_cost[k - 1]) {
            throw ValidationError("generator: marginal costs must be non-decreasing per block");
        }
    }
    if (!(min_stable_generation >= 0.0) || min_stable_generation > capacity()) {
        throw ValidationError("generator: minimum stable generation must lie in [0, capacity]");
    }
    if (!(no_load_cost >= 0.0) || !(startup_cost >= 0.0) || !(shutdown_cost >= 0.0)) {
        throw ValidationError("generator: costs must be nonnegative");
    }
    if (!(ramp_up >= 0.0) || !(ramp_down >= 0.0)) {
        throw ValidationError("generator: ramp rates must be nonnegative");
    }
    if (min_up_time < 1 || min_down_time < 1) {
        throw ValidationError("generator: minimum up/down times must be >= 1 hour");
    }
    if (initial_power < 0.0 || initial_power > capacity()) {
        throw ValidationError("generator: initial operating state must lie in [0, capacity]");
    }
    if (initially_on() && initial_power < min_stable_generation - 1e-9) {
        throw ValidationError("generator: initial on-state below minimum stable generation");
    }
    if (initial_on_hours < 0 || initial_off_hours < 0) {
        throw ValidationError("generator: initial on/off hours must be nonnegative");
    }
}

namespace {

struct GenModel {
    solver::MixedIntegerProgram mip;
    int periods = 0;
    int blocks = 0;

    int g(int t, int k) const { return t * blocks + k; }
    int u(int t) const { return periods * blocks + t; }
    int cup(int t) const { return periods * blocks + periods + t; }
    int cdn(int t) const { return periods * blocks + 2 * periods + t; }
};

// Objective: maximize v(x) - <prices, x>. Setting fix_off forces g = 0 for a
// feasibility-restricted valuation of the zero profile.
GenModel build_model(const ThermalGeneratorParams& p, const std::vector<double>& prices,
                     bool fix_off) {
    const int T = static_cast<int>(prices.size());
    const int B = static_cast<int>(p.block_width.size());
    GenModel model;
    model.periods = T;
    model.blocks = B;
    solver::LinearProgram& lp = model.mip.lp;
    lp.sense = solver::Sense::maximize;

    for (int t = 0; t < T; ++t) {
        for (int k = 0; k < B; ++k) {
            const double lo = fix_off ? 0.0 : -p.block_width[k];
            lp.add_column(lo, 0.0, p.block_marginal_cost[k] - prices[t]);
        }
    }
    for (int t = 0; t < T; ++t) lp.add_column(0.0, 1.0, -p.no_load_cost);
    for (int t = 0; t < T; ++t) lp.add_column(0.0, solver::kInfinity, -1.0);  // start-up
    for (int t = 0; t < T; ++t) lp.add_column(0.0, solver::kInfinity, -1.0);  // shut-down
    for (int t = 0; t < T; ++t) model.mip.integer_cols.push_back(model.u(t));

    const double u0 = p.initially_on() ? 1.0 : 0.0;
    const double x0 = -p.initial_power;  // signed grid power before hour 1

    for (int t = 0; t < T; ++t) {
        // Block limits: -g_tk <= u_t * width  <=>  -g - width*u <= 0.
        for (int k = 0; k < B; ++k) {
            lp.add_row(solver::RowSense::less_equal, 0.0,
                       {model.g(t, k), model.u(t)}, {-1.0, -p.block_width[k]});
        }
        // Minimum stable generation: sum_k g + Pmin*u <= 0.
        {
            std::vector<int> cols;
            std::vector<double> vals;
            for (int k = 0; k < B; ++k) { cols.push_back(model.g(t, k)); vals.push_back(1.0); }
            cols.push_back(model.u(t));
            vals.push_back(p.min_stable_generation);
            lp.add_row(solver::RowSense::less_equal, 0.0, std::move(cols), std::move(vals));
        }
        // Ramping: -Rdn <= x_{t-1} - x_t <= Rup.
        {
            std::vector<int> cols;
            std::vector<double> vals;
            for (int k = 0; k < B; ++k) { cols.push_back(model.g(t, k)); vals.push_back(-1.0); }
            double up_rhs = p.ramp_up;
            double dn_rhs = p.ramp_down;
            if (t >= 1) {
                for (int k = 0; k < B; ++k) { cols.push_back(model.g(t - 1, k)); vals.push_back(1.0); }
            } else {
                up_rhs -= x0;
                dn_rhs += x0;
            }
            lp.add_row(solver::RowSense::less_equal, up_rhs, cols, vals);
            for (double& v : vals) v = -v;
            lp.add_row(solver::RowSense::less_equal, dn_rhs, std::move(cols), std::move(vals));
        }
        // Start-up / shut-down cost epigraphs.
        if (t >= 1) {
            lp.add_row(solver::RowSense::greater_equal, 0.0,
                       {model.cup(t), model.u(t), model.u(t - 1)},
                       {1.0, -p.startup_cost, p.startup_cost});
            lp.add_row(solver::RowSense::greater_equal, 0.0,
                       {model.cdn(t), model.u(t), model.u(t - 1)},
                       {1.0, p.shutdown_cost, -p.shutdown_cost});
        } else {
            lp.add_row(solver::RowSense::greater_equal, -p.startup_cost * u0,
                       {model.cup(t), model.u(t)}, {1.0, -p.startup_cost});
            lp.add_row(solver::RowSense::greater_equal, p.shutdown_cost * u0,
                       {model.cdn(t), model.u(t)}, {1.0, p.shutdown_cost});
        }
    }

    const int HUp = std::min(p.obligated_on_hours(), T);
    const int HDn = std::min(p.obligated_off_hours(), T);
    for (int t = 0; t < HUp; ++t) {
        lp.add_row(solver::RowSense::equal, 1.0, {model.u(t)}, {1.0});
    }
    for (int t = 0; t < HDn; ++t) {
        lp.add_row(solver::RowSense::equal, 0.0, {model.u(t)}, {1.0});
    }

    const int TUp = p.min_up_time;
    const int TDn = p.min_down_time;
    // Intermediate windows: a start at t keeps the unit on for TUp hours.
    for (int t = HUp; t <= T - TUp; ++t) {
        std::vector<int> cols;
        std::vector<double> vals;
        double rhs = 0.0;
        auto add = [&](int col, double v) {
            for (size_t i = 0; i < cols.size(); ++i) {
                if (cols[i] == col) { vals[i] += v; return; }
            }
            cols.push_back(col);
            vals.push_back(v);
        };
        for (int j = t; j < t + TUp; ++j) add(model.u(j), 1.0);
        add(model.u(t), -static_cast<double>(TUp));
        if (t >= 1) add(model.u(t - 1), static_cast<double>(TUp));
        else rhs = -static_cast<double>(TUp) * u0;
        lp.add_row(solver::RowSense::greater_equal, rhs, std::move(cols), std::move(vals));
    }
    // Final windows: a start near the end keeps the unit on through T.
    for (int t = std::max(HUp, T - TUp + 1); t < T; ++t) {
        std::vector<int> cols;
        std::vector<double> vals;
        double rhs = 0.0;
        auto add = [&](int col, double v) {
            for (size_t i = 0; i < cols.size(); ++i) {
                if (cols[i] == col) { vals[i] += v; return; }
            }
            cols.push_back(col);
            vals.push_back(v);
        };
        const double w = static_cast<double>(T - t);
        for (int j = t; j < T; ++j) add(model.u(j), 1.0);
        add(model.u(t), -w);
        if (t >= 1) add(model.u(t - 1), w);
        else rhs = -w * u0;
        lp.add_row(solver::RowSense::greater_equal, rhs, std::move(cols), std::move(vals));
    }
    // Min-down intermediate: a stop at t keeps the unit off for TDn hours.
    for (int t = HDn; t <= T - TDn; ++t) {
        std::vector<int> cols;
        std::vector<double> vals;
        double rhs = static_cast<double>(TDn);
        auto add = [&](int col, double v) {
            for (size_t i = 0; i < cols.size(); ++i) {
                if (cols[i] == col) { vals[i] += v; return; }
            }
            cols.push_back(col);
            vals.push_back(v);
        };
        for (int j = t; j < t + TDn; ++j) add(model.u(j), 1.0);
        add(model.u(t), -static_cast<double>(TDn));
        if (t >= 1) add(model.u(t - 1), static_cast<double>(TDn));
        else rhs = static_cast<double>(TDn) - static_cast<double>(TDn) * u0;
        lp.add_row(solver::RowSense::less_equal, rhs, std::move(cols), std::move(vals));
    }
    // Min-down final windows.
    for (int t = std::max(HDn, T - TDn + 1); t < T; ++t) {
        std::vector<int> cols;
        std::vector<double> vals;
        const double w = static_cast<double>(T - t);
        double rhs = w;
        auto add = [&](int col, double v) {
            for (size_t i = 0; i < cols.size(); ++i) {
                if (cols[i] == col) { vals[i] += v; return; }
            }
            cols.push_back(col);
            vals.push_back(v);
        };
        for (int j = t; j < T; ++j) add(model.u(j), 1.0);
        add(model.u(t), -w);
        if (t >= 1) add(model.u(t - 1), w);
        else rhs = w - w * u0;
        lp.add_row(solver::RowSense::less_equal, rhs, std::move(cols), std::move(vals));
    }
    return model;
}

ValuationResult extract(const GenModel& model, const ThermalGeneratorParams& p,
                        const std::vector<double>& prices, const solver::Solution& sol) {
    const int T = model.periods;
    const int B = model.blocks;
    ValuationResult out;
    out.profile.assign(T, 0.0);
    GeneratorSchedule sched;
    sched.on.assign(T, 0);
    sched.block_supply.assign(T, std::vector<double>(B, 0.0));
    sched.startup_cost.assign(T, 0.0);
    sched.shutdown_cost.assign(T, 0.0);
    for (int t = 0; t < T; ++t) {
        sched.on[t] = sol.x[model.u(t)] > 0.5 ? 1 : 0;
        for (int k = 0; k < B; ++k) {
            const double g = sol.x[model.g(t, k)];
            sched.block_supply[t][k] = g;
            out.profile[t] += g;
        }
        sched.startup_cost[t] = sol.x[model.cup(t)];
        sched.shutdown_cost[t] = sol.x[model.cdn(t)];
    }
    out.surplus = sol.objective;
    double payment = 0.0;
    for (int t = 0; t < T; ++t) payment += prices[t] * out.profile[t];
    out.valuation = out.surplus + payment;
    out.schedule = std::move(sched);
    (void)p;
    return out;
}

}  // namespace

ValuationResult generator_best_response(const ThermalGeneratorParams& params,
                                        const std::vector<double>& prices,
                                        const solver::SolverSettings& settings) {
    params.validate();
    for (double v : prices) {
        if (!std::isfinite(v)) throw ValidationError("generator: prices must be finite");
    }
    if (prices.empty()) throw ValidationError("generator: empty price vector");

    GenModel model = build_model(params, prices, /*fix_off=*/false);
    solver::Solution sol = solver::solve_milp(model.mip, 0.0, settings);
    if (sol.status != solver::SolveStatus::optimal) {
        throw SolverError("generator best response: relaxed model reported " +
                          std::string(sol.status == solver::SolveStatus::infeasible
                                          ? "infeasible" : "unbounded"));
    }
    ValuationResult out = extract(model, params, prices, sol);

    // Tie-break surplus-zero optima to the zero profile when staying off is
    // allowed; keeps repeated runs and downstream dedup deterministic.
    if (std::abs(out.surplus) <= 1e-7 && !params.initially_on() &&
        params.obligated_off_hours() == 0) {
        const int T = static_cast<int>(prices.size());
        out.profile.assign(T, 0.0);
        out.valuation = 0.0;
        out.surplus = 0.0;
        GeneratorSchedule idle;
        idle.on.assign(T, 0);
        idle.block_supply.assign(T, std::vector<double>(params.block_width.size(), 0.0));
        idle.startup_cost.assign(T, 0.0);
        idle.shutdown_cost.assign(T, 0.0);
        out.schedule = std::move(idle);
    }
    return out;
}

std::optional<double> generator_zero_profile_valuation(
    const ThermalGeneratorParams& params, int periods,
    const solver::SolverSettings& settings) {
    params.validate();
    if (!params.initially_on() && params.obligated_off_hours() == 0) {
        return 0.0;  // stay off, cost nothing
    }
    const std::vector<double> zero_prices(periods, 0.0);
    GenModel model = build_model(params, zero_prices, /*fix_off=*/true);
    solver::Solution sol = solver::solve_milp(model.mip, 0.0, settings);
    if (sol.status != solver::SolveStatus::optimal) return std::nullopt;
    return sol.objective;
}

}  // namespace xorbid::agents
