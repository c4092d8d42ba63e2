// Run artifacts: trace CSV rows and the JSON summary.
#pragma once

#include "rrg/engine.hpp"
#include "rrg/grammar.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <ostream>
#include <string>

namespace rrg {

inline std::string format_fixed(double v, int decimals = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline constexpr const char* kTraceHeader = "step,f,dbar,edges,wsum,alpha";

inline void write_trace_csv(std::ostream& os, const Trace& trace)
{
    os << kTraceHeader << '\n';
    for (const auto& s : trace.samples) {
        os << s.step << ',' << s.f << ',' << format_fixed(s.dbar.value()) << ',' << s.edges << ','
           << s.wsum << ',';
        if (s.alpha)
            os << format_fixed(*s.alpha);
        os << '\n';
    }
}

inline nlohmann::json to_json(const ExperimentConfig& cfg)
{
    nlohmann::json j;
    j["grammar"] = std::string(to_string(cfg.grammar));
    j["epsilon"] = cfg.epsilon;
    j["beta"] = cfg.beta;
    j["seed"] = cfg.seed;
    j["max_steps"] = cfg.max_steps;
    j["metrics_every"] = cfg.metrics_every;
    j["alpha_every"] = cfg.alpha_every;
    j["snapshot_every"] = cfg.snapshot_every;
    j["rounds_after_absorption"] =
        cfg.rounds_after_absorption ? nlohmann::json(*cfg.rounds_after_absorption) : nlohmann::json();
    return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j)
{
    ExperimentConfig cfg;
    auto grammar = parse_grammar(j.at("grammar").get<std::string>());
    if (!grammar)
        throw UsageError("unknown grammar in config");
    cfg.grammar = *grammar;
    cfg.epsilon = j.at("epsilon").get<double>();
    cfg.beta = j.at("beta").get<double>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.max_steps = j.at("max_steps").get<std::size_t>();
    cfg.metrics_every = j.at("metrics_every").get<std::size_t>();
    cfg.alpha_every = j.at("alpha_every").get<std::size_t>();
    cfg.snapshot_every = j.at("snapshot_every").get<std::size_t>();
    if (j.contains("rounds_after_absorption") && !j["rounds_after_absorption"].is_null())
        cfg.rounds_after_absorption = j["rounds_after_absorption"].get<std::size_t>();
    return cfg;
}

inline nlohmann::json summary_json(const Trace& trace, double wall_seconds)
{
    nlohmann::json j;
    j["config"] = to_json(trace.config);
    j["steps_run"] = trace.steps_run;
    j["absorption_step"] = trace.absorption_step ? nlohmann::json(*trace.absorption_step) : nlohmann::json();
    j["absorbed_m"] = trace.absorbed_m ? nlohmann::json(*trace.absorbed_m) : nlohmann::json();
    auto alpha = trace.final_alpha();
    j["final_alpha"] = alpha ? nlohmann::json(*alpha) : nlohmann::json();
    if (!trace.samples.empty()) {
        const auto& last = trace.samples.back();
        j["final"] = {{"f", last.f}, {"dbar", last.dbar.value()}, {"edges", last.edges}, {"wsum", last.wsum}};
    }
    j["wall_time_s"] = wall_seconds;
    return j;
}

} // namespace rrg
