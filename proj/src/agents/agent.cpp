#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "xorbid/agents/agents.hpp"
#include "xorbid/errors.hpp"

namespace xorbid::agents {

std::optional<double> generator_zero_profile_valuation(
    const ThermalGeneratorParams& params, int periods,
    const solver::SolverSettings& settings);
double heat_zero_profile_valuation(const HeatUtilityParams& params,
                                   const solver::SolverSettings& settings);

std::string Agent::kind() const {
    if (std::holds_alternative<ThermalGeneratorParams>(params)) return "thermal_generator";
    if (std::holds_alternative<BatteryParams>(params)) return "battery_storage";
    return "heating_utility";
}

void Agent::validate() const {
    std::visit([](const auto& p) { p.validate(); }, params);
}

ValuationResult Agent::best_response(const std::vector<double>& prices,
                                     const solver::SolverSettings& settings) const {
    if (const auto* g = std::get_if<ThermalGeneratorParams>(&params)) {
        return generator_best_response(*g, prices, settings);
    }
    if (const auto* b = std::get_if<BatteryParams>(&params)) {
        return battery_best_response(*b, prices, settings);
    }
    return heat_best_response(std::get<HeatUtilityParams>(params), prices, settings);
}

std::optional<double> Agent::zero_profile_valuation(
    int periods, const solver::SolverSettings& settings) const {
    if (const auto* g = std::get_if<ThermalGeneratorParams>(&params)) {
        return generator_zero_profile_valuation(*g, periods, settings);
    }
    if (std::holds_alternative<BatteryParams>(params)) {
        return 0.0;  // idling is always feasible and worth exactly 0
    }
    const auto& h = std::get<HeatUtilityParams>(params);
    if (periods != static_cast<int>(h.heat_load.size())) {
        throw ValidationError("heat utility: period count does not match load length");
    }
    return heat_zero_profile_valuation(h, settings);
}

double power_cap(const Agent& agent) {
    if (const auto* g = std::get_if<ThermalGeneratorParams>(&agent.params)) {
        return g->capacity();
    }
    if (const auto* b = std::get_if<BatteryParams>(&agent.params)) {
        return std::max(b->charge_limit, b->discharge_limit);
    }
    return std::get<HeatUtilityParams>(agent.params).electric_capacity;
}

double valuation_norm_bound(const Agent& agent, int periods) {
    if (periods < 1) throw ValidationError("valuation_norm_bound: periods must be >= 1");
    const double cap = power_cap(agent);
    return 2.0 * cap * std::sqrt(static_cast<double>(periods));
}

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw ValidationError("agent config: missing numeric field '" + key + "'");
    }
    return j[key].get<double>();
}

int require_int(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        throw ValidationError("agent config: missing integer field '" + key + "'");
    }
    return j[key].get<int>();
}

Agent parse(const json& j) {
    if (!j.contains("agent") || !j["agent"].is_string()) {
        throw ValidationError("agent config: missing string field 'agent'");
    }
    const std::string kind = j["agent"].get<std::string>();
    Agent agent;
    if (kind == "thermal_generator") {
        ThermalGeneratorParams p;
        p.no_load_cost = require_number(j, "no_load_cost_eur_per_h");
        if (!j.contains("marginal_cost_blocks") || !j["marginal_cost_blocks"].is_array()) {
            throw ValidationError("agent config: missing array 'marginal_cost_blocks'");
        }
        for (const auto& blk : j["marginal_cost_blocks"]) {
            p.block_width.push_back(require_number(blk, "block_width_mw"));
            p.block_marginal_cost.push_back(require_number(blk, "marginal_cost_eur_per_mwh"));
        }
        p.startup_cost = require_number(j, "startup_cost_eur");
        p.shutdown_cost = require_number(j, "shutdown_cost_eur");
        p.min_stable_generation = require_number(j, "minimum_stable_generation_mw");
        p.ramp_up = require_number(j, "ramp_up_mw_per_h");
        p.ramp_down = require_number(j, "ramp_down_mw_per_h");
        p.min_up_time = require_int(j, "minimum_up_time_h");
        p.min_down_time = require_int(j, "minimum_down_time_h");
        p.initial_power = require_number(j, "initial_operating_state_mw");
        p.initial_on_hours = j.value("initial_on_hours", 0);
        p.initial_off_hours = require_int(j, "initial_off_hours");
        agent.params = std::move(p);
    } else if (kind == "battery_storage") {
        BatteryParams p;
        p.charge_limit = require_number(j, "max_charging_limit_mw");
        p.discharge_limit = require_number(j, "max_discharging_limit_mw");
        p.charge_efficiency = require_number(j, "charging_efficiency");
        p.discharge_efficiency = require_number(j, "discharging_efficiency");
        p.soc_min = require_number(j, "min_state_of_charge_mwh");
        p.soc_max = require_number(j, "max_state_of_charge_mwh");
        p.soc_initial = require_number(j, "initial_state_of_charge_mwh");
        agent.params = std::move(p);
    } else if (kind == "heating_utility") {
        HeatUtilityParams p;
        p.electric_efficiency = require_number(j, "efficiency_electric_boiler");
        p.gas_efficiency = require_number(j, "efficiency_gas_boiler");
        p.storage_loss = require_number(j, "storage_loss_per_hour");
        p.gas_cost = require_number(j, "gas_cost_eur_per_mwh");
        p.served_load_value = require_number(j, "value_served_load_eur_per_mwh");
        p.electric_capacity = require_number(j, "capacity_electric_boiler_mw");
        p.gas_capacity = require_number(j, "capacity_gas_boiler_mw");
        p.storage_capacity = require_number(j, "capacity_heat_storage_mwh");
        p.storage_charge_limit = require_number(j, "max_storage_charging_mw");
        p.storage_discharge_limit = require_number(j, "max_storage_discharging_mw");
        p.soc_initial = require_number(j, "initial_state_of_charge_mwh");
        if (!j.contains("hourly_heat_load_mw") || !j["hourly_heat_load_mw"].is_array()) {
            throw ValidationError("agent config: missing array 'hourly_heat_load_mw'");
        }
        for (const auto& v : j["hourly_heat_load_mw"]) {
            if (!v.is_number()) throw ValidationError("agent config: heat load entries must be numbers");
            p.heat_load.push_back(v.get<double>());
        }
        agent.params = std::move(p);
    } else {
        throw ValidationError("agent config: unknown agent kind '" + kind +
                              "' (expected thermal_generator, battery_storage, heating_utility)");
    }
    agent.validate();
    return agent;
}

}  // namespace

Agent parse_agent_config(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ValidationError("agent config: invalid JSON");
    return parse(j);
}

Agent load_agent_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("agent config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_agent_config(ss.str());
}

}  // namespace xorbid::agents
