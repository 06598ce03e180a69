#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xorbid/solver/lp.hpp"

namespace xorbid::agents {

// Grid power per period in MW; positive = consumption, negative = supply.
using PowerProfile = std::vector<double>;

struct ThermalGeneratorParams {
    double no_load_cost = 0.0;                // EUR/h while committed
    std::vector<double> block_marginal_cost;  // EUR/MWh, non-decreasing
    std::vector<double> block_width;          // MW
    double startup_cost = 0.0;                // EUR
    double shutdown_cost = 0.0;               // EUR
    double min_stable_generation = 0.0;       // MW
    double ramp_up = 0.0;                     // MW/h
    double ramp_down = 0.0;                   // MW/h
    int min_up_time = 1;                      // h
    int min_down_time = 1;                    // h
    double initial_power = 0.0;               // MW generated in the hour before the horizon
    int initial_on_hours = 0;                 // hours already on (plant initially on)
    // Hours already off. 0 means no pending down-time obligation; h > 0 means
    // the plant was shut down h hours ago and owes max(0, min_down_time - h)
    // more off hours.
    int initial_off_hours = 0;

    double capacity() const;
    bool initially_on() const { return initial_power > 0.0; }
    int obligated_on_hours() const;   // remaining forced-on hours at horizon start
    int obligated_off_hours() const;  // remaining forced-off hours
    void validate() const;
};

struct BatteryParams {
    double charge_limit = 0.0;        // MW
    double discharge_limit = 0.0;     // MW
    double charge_efficiency = 1.0;   // (0,1]
    double discharge_efficiency = 1.0;
    double soc_min = 0.0;             // MWh
    double soc_max = 0.0;
    double soc_initial = 0.0;         // also the required end-of-horizon level

    void validate() const;
};

struct HeatUtilityParams {
    double electric_efficiency = 1.0;    // MWh heat per MWh electricity
    double gas_efficiency = 1.0;         // MWh heat per MWh gas
    double storage_loss = 0.0;           // fraction of stored heat lost per hour
    double gas_cost = 0.0;               // EUR/MWh gas
    double served_load_value = 0.0;      // EUR/MWh heat served
    double electric_capacity = 0.0;      // MW
    double gas_capacity = 0.0;           // MW
    double storage_capacity = 0.0;       // MWh
    double storage_charge_limit = 0.0;   // MW
    double storage_discharge_limit = 0.0;
    double soc_initial = 0.0;            // MWh, also required at horizon end
    std::vector<double> heat_load;       // MW per hour; defines the horizon length

    void validate() const;
};

struct GeneratorSchedule {
    std::vector<std::uint8_t> on;
    std::vector<std::vector<double>> block_supply;  // [t][k], nonpositive MW
    std::vector<double> startup_cost;
    std::vector<double> shutdown_cost;
};

struct BatterySchedule {
    std::vector<double> charge;     // MW
    std::vector<double> discharge;  // MW
    std::vector<double> soc;        // MWh after each hour
    std::vector<std::uint8_t> charging;
};

struct HeatSchedule {
    std::vector<double> electric;   // MW drawn by the electric boiler
    std::vector<double> gas;        // MW gas burned
    std::vector<double> curtailed;  // MW heat load dropped
    std::vector<double> charge;     // MW into heat storage
    std::vector<double> discharge;  // MW out of heat storage
    std::vector<double> soc;        // MWh after each hour
};

using AgentSchedule = std::variant<GeneratorSchedule, BatterySchedule, HeatSchedule>;

struct ValuationResult {
    PowerProfile profile;
    double valuation = 0.0;  // v(x), EUR
    double surplus = 0.0;    // v(x) - <prices, x>, EUR
    AgentSchedule schedule;
};

ValuationResult generator_best_response(const ThermalGeneratorParams& params,
                                        const std::vector<double>& prices,
                                        const solver::SolverSettings& settings = {});

ValuationResult battery_best_response(const BatteryParams& params,
                                      const std::vector<double>& prices,
                                      const solver::SolverSettings& settings = {});

ValuationResult heat_best_response(const HeatUtilityParams& params,
                                   const std::vector<double>& prices,
                                   const solver::SolverSettings& settings = {});

// One handle for "some agent" so the bid pipeline stays model-agnostic.
struct Agent {
    std::variant<ThermalGeneratorParams, BatteryParams, HeatUtilityParams> params;

    std::string kind() const;
    void validate() const;
    ValuationResult best_response(const std::vector<double>& prices,
                                  const solver::SolverSettings& settings = {}) const;
    // v(0): value of staying out of the power market (stay off / gas-or-curtail).
    // nullopt when the zero profile is infeasible (e.g. a committed generator
    // that still owes up-time).
    std::optional<double> zero_profile_valuation(
        int periods, const solver::SolverSettings& settings = {}) const;
};

// L = 2 * sqrt(sum_t cap_t^2): twice the Euclidean norm of the per-period
// power-cap box, an upper bound on 2*max{||x||_2 : v(x) finite}.
double valuation_norm_bound(const Agent& agent, int periods);

// Per-period absolute power cap used by the bound above.
double power_cap(const Agent& agent);

Agent load_agent_config(const std::string& path);
Agent parse_agent_config(const std::string& json_text);

}  // namespace xorbid::agents
