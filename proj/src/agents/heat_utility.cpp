// District heating utility: serve a heat load from an electric boiler, a gas
// boiler, lossy heat storage, or paid curtailment. Pure LP, no binaries.

#include <cmath>
#include <string>
#include <vector>

#include "xorbid/agents/agents.hpp"
#include "xorbid/errors.hpp"
#include "xorbid/solver/lp.hpp"

namespace xorbid::agents {

void HeatUtilityParams::validate() const {
    if (!(electric_efficiency > 0.0) || electric_efficiency > 1.0 ||
        !(gas_efficiency > 0.0) || gas_efficiency > 1.0) {
        throw ValidationError("heat utility: boiler efficiencies must lie in (0, 1]");
    }
    if (!(storage_loss >= 0.0) || storage_loss >= 1.0) {
        throw ValidationError("heat utility: storage loss must lie in [0, 1)");
    }
    if (!(gas_cost >= 0.0) || !(served_load_value >= 0.0)) {
        throw ValidationError("heat utility: gas cost and load value must be nonnegative");
    }
    for (double v : {electric_capacity, gas_capacity, storage_capacity,
                     storage_charge_limit, storage_discharge_limit}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ValidationError("heat utility: capacities must be nonnegative and finite");
        }
    }
    if (soc_initial < 0.0 || soc_initial > storage_capacity) {
        throw ValidationError("heat utility: initial storage level outside [0, capacity]");
    }
    if (heat_load.empty()) {
        throw ValidationError("heat utility: heat load vector is empty");
    }
    for (double v : heat_load) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ValidationError("heat utility: heat load entries must be nonnegative");
        }
    }
}

namespace {

ValuationResult solve_heat(const HeatUtilityParams& p, const std::vector<double>& prices,
                           bool fix_zero_purchase, const solver::SolverSettings& settings) {
    const int T = static_cast<int>(p.heat_load.size());
    solver::LinearProgram lp;
    lp.sense = solver::Sense::maximize;
    auto xe = [&](int t) { return t; };
    auto yg = [&](int t) { return T + t; };
    auto zc = [&](int t) { return 2 * T + t; };
    auto gs = [&](int t) { return 3 * T + t; };
    auto ds = [&](int t) { return 4 * T + t; };
    auto es = [&](int t) { return 5 * T + t; };

    // v = sum_t K*(D_t - z_t) - C*y_t; objective drops the constant K*sum(D).
    for (int t = 0; t < T; ++t) {
        lp.add_column(0.0, fix_zero_purchase ? 0.0 : p.electric_capacity, -prices[t]);
    }
    for (int t = 0; t < T; ++t) lp.add_column(0.0, p.gas_capacity, -p.gas_cost);
    for (int t = 0; t < T; ++t) lp.add_column(0.0, p.heat_load[t], -p.served_load_value);
    for (int t = 0; t < T; ++t) lp.add_column(0.0, p.storage_charge_limit, 0.0);
    for (int t = 0; t < T; ++t) lp.add_column(0.0, p.storage_discharge_limit, 0.0);
    for (int t = 0; t < T; ++t) lp.add_column(0.0, p.storage_capacity, 0.0);

    const double keep = 1.0 - p.storage_loss;
    for (int t = 0; t < T; ++t) {
        // eff_e*x + eff_g*y + d - g + z = D_t
        lp.add_row(solver::RowSense::equal, p.heat_load[t],
                   {xe(t), yg(t), ds(t), gs(t), zc(t)},
                   {p.electric_efficiency, p.gas_efficiency, 1.0, -1.0, 1.0});
        // e_t = keep*e_{t-1} + g_t - d_t
        std::vector<int> cols{es(t), gs(t), ds(t)};
        std::vector<double> vals{1.0, -1.0, 1.0};
        double rhs = 0.0;
        if (t >= 1) {
            cols.push_back(es(t - 1));
            vals.push_back(-keep);
        } else {
            rhs = keep * p.soc_initial;
        }
        lp.add_row(solver::RowSense::equal, rhs, std::move(cols), std::move(vals));
    }
    lp.add_row(solver::RowSense::equal, p.soc_initial, {es(T - 1)}, {1.0});

    solver::Solution sol = solver::solve_lp(lp, settings);
    if (sol.status != solver::SolveStatus::optimal) {
        throw SolverError("heat utility best response: model reported " +
                          std::string(sol.status == solver::SolveStatus::infeasible
                                          ? "infeasible" : "unbounded"));
    }

    double base_value = 0.0;
    for (double dload : p.heat_load) base_value += p.served_load_value * dload;

    ValuationResult out;
    out.profile.assign(T, 0.0);
    HeatSchedule sched;
    sched.electric.assign(T, 0.0);
    sched.gas.assign(T, 0.0);
    sched.curtailed.assign(T, 0.0);
    sched.charge.assign(T, 0.0);
    sched.discharge.assign(T, 0.0);
    sched.soc.assign(T, 0.0);
    double payment = 0.0;
    for (int t = 0; t < T; ++t) {
        sched.electric[t] = sol.x[xe(t)];
        sched.gas[t] = sol.x[yg(t)];
        sched.curtailed[t] = sol.x[zc(t)];
        sched.charge[t] = sol.x[gs(t)];
        sched.discharge[t] = sol.x[ds(t)];
        sched.soc[t] = sol.x[es(t)];
        out.profile[t] = sched.electric[t];
        payment += prices[t] * out.profile[t];
    }
    out.surplus = sol.objective + base_value;
    out.valuation = out.surplus + payment;
    out.schedule = std::move(sched);
    return out;
}

}  // namespace

ValuationResult heat_best_response(const HeatUtilityParams& params,
                                   const std::vector<double>& prices,
                                   const solver::SolverSettings& settings) {
    params.validate();
    if (prices.size() != params.heat_load.size()) {
        throw ValidationError("heat utility: price vector length " +
                              std::to_string(prices.size()) + " does not match load length " +
                              std::to_string(params.heat_load.size()));
    }
    for (double v : prices) {
        if (!std::isfinite(v)) throw ValidationError("heat utility: prices must be finite");
    }
    return solve_heat(params, prices, /*fix_zero_purchase=*/false, settings);
}

double heat_zero_profile_valuation(const HeatUtilityParams& params,
                                   const solver::SolverSettings& settings) {
    params.validate();
    const std::vector<double> zero_prices(params.heat_load.size(), 0.0);
    return solve_heat(params, zero_prices, /*fix_zero_purchase=*/true, settings).valuation;
}

}  // namespace xorbid::agents
