// Battery arbitrage best response. One mutual-exclusion binary per hour so
// simultaneous charge/discharge stays out even under negative prices; cyclic
// state of charge.

#include <cmath>
#include <string>
#include <vector>

#include "xorbid/agents/agents.hpp"
#include "xorbid/errors.hpp"
#include "xorbid/solver/lp.hpp"

namespace xorbid::agents {

void BatteryParams::validate() const {
    if (!(charge_efficiency > 0.0) || charge_efficiency > 1.0 ||
        !(discharge_efficiency > 0.0) || discharge_efficiency > 1.0) {
        throw ValidationError("battery: efficiencies must lie in (0, 1]");
    }
    if (!(charge_limit >= 0.0) || !(discharge_limit >= 0.0)) {
        throw ValidationError("battery: charge/discharge limits must be nonnegative");
    }
    if (soc_min > soc_max) {
        throw ValidationError("battery: SoC lower bound exceeds upper bound");
    }
    if (soc_initial < soc_min || soc_initial > soc_max) {
        throw ValidationError("battery: initial state of charge outside its bounds");
    }
    for (double v : {charge_limit, discharge_limit, soc_min, soc_max, soc_initial}) {
        if (!std::isfinite(v)) throw ValidationError("battery: parameters must be finite");
    }
}

ValuationResult battery_best_response(const BatteryParams& params,
                                      const std::vector<double>& prices,
                                      const solver::SolverSettings& settings) {
    params.validate();
    if (prices.empty()) throw ValidationError("battery: empty price vector");
    for (double v : prices) {
        if (!std::isfinite(v)) throw ValidationError("battery: prices must be finite");
    }
    const int T = static_cast<int>(prices.size());

    solver::MixedIntegerProgram mip;
    solver::LinearProgram& lp = mip.lp;
    lp.sense = solver::Sense::maximize;
    auto g = [&](int t) { return t; };
    auto d = [&](int t) { return T + t; };
    auto e = [&](int t) { return 2 * T + t; };
    auto mode = [&](int t) { return 3 * T + t; };

    // v(x) = 0; maximize -<prices, x> = sum_t prices_t * (d_t - g_t).
    for (int t = 0; t < T; ++t) lp.add_column(0.0, params.charge_limit, -prices[t]);
    for (int t = 0; t < T; ++t) lp.add_column(0.0, params.discharge_limit, prices[t]);
    for (int t = 0; t < T; ++t) lp.add_column(params.soc_min, params.soc_max, 0.0);
    for (int t = 0; t < T; ++t) {
        lp.add_column(0.0, 1.0, 0.0);
        mip.integer_cols.push_back(mode(t));
    }

    for (int t = 0; t < T; ++t) {
        lp.add_row(solver::RowSense::less_equal, 0.0,
                   {g(t), mode(t)}, {1.0, -params.charge_limit});
        lp.add_row(solver::RowSense::less_equal, params.discharge_limit,
                   {d(t), mode(t)}, {1.0, params.discharge_limit});
        // e_t = e_{t-1} + eff_c * g_t - d_t / eff_d
        std::vector<int> cols{e(t), g(t), d(t)};
        std::vector<double> vals{1.0, -params.charge_efficiency,
                                 1.0 / params.discharge_efficiency};
        double rhs = 0.0;
        if (t >= 1) {
            cols.push_back(e(t - 1));
            vals.push_back(-1.0);
        } else {
            rhs = params.soc_initial;
        }
        lp.add_row(solver::RowSense::equal, rhs, std::move(cols), std::move(vals));
    }
    lp.add_row(solver::RowSense::equal, params.soc_initial, {e(T - 1)}, {1.0});

    solver::Solution sol = solver::solve_milp(mip, 0.0, settings);
    if (sol.status != solver::SolveStatus::optimal) {
        throw SolverError("battery best response: model reported " +
                          std::string(sol.status == solver::SolveStatus::infeasible
                                          ? "infeasible" : "unbounded"));
    }

    ValuationResult out;
    out.valuation = 0.0;
    out.surplus = sol.objective;
    out.profile.assign(T, 0.0);
    BatterySchedule sched;
    sched.charge.assign(T, 0.0);
    sched.discharge.assign(T, 0.0);
    sched.soc.assign(T, 0.0);
    sched.charging.assign(T, 0);
    for (int t = 0; t < T; ++t) {
        sched.charge[t] = sol.x[g(t)];
        sched.discharge[t] = sol.x[d(t)];
        sched.soc[t] = sol.x[e(t)];
        sched.charging[t] = sol.x[mode(t)] > 0.5 ? 1 : 0;
        out.profile[t] = sched.charge[t] - sched.discharge[t];
    }

    // Tie-break zero-surplus optima to the idle profile.
    if (std::abs(out.surplus) <= 1e-7) {
        out.surplus = 0.0;
        out.profile.assign(T, 0.0);
        sched.charge.assign(T, 0.0);
        sched.discharge.assign(T, 0.0);
        sched.soc.assign(T, params.soc_initial);
        sched.charging.assign(T, 0);
    }
    out.schedule = std::move(sched);
    return out;
}

}  // namespace xorbid::agents
