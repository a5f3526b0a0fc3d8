#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frobenius.hpp"

namespace fsig {

// One computation request: prime, graded variables, optional equation text,
// plus run limits. Collected from command-line flags and/or a JSON job file;
// flags win on conflict.
struct JobSpec {
    long long prime = 0;
    std::vector<std::pair<std::string, long long>> variables;
    std::string poly_text;
    int e_max = 1;
    long long budget = default_budget;
    std::string out_dir;

    bool has_ring() const { return prime != 0 && !variables.empty(); }
};

struct ValidatedJob {
    RingPtr ring;
    std::optional<Polynomial> poly;
};

// "x:1,y:1,z:2" -> [(x,1), (y,1), (z,2)]
inline std::vector<std::pair<std::string, long long>> parse_var_spec(const std::string& spec) {
    std::vector<std::pair<std::string, long long>> vars;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string item = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
        std::size_t colon = item.find(':');
        if (colon == std::string::npos || colon == 0)
            throw error("bad variable spec '" + item + "' (expected name:weight)");
        std::string name = item.substr(0, colon);
        long long weight = 0;
        try {
            weight = std::stoll(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw error("bad weight in variable spec '" + item + "'");
        }
        vars.emplace_back(name, weight);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (vars.empty()) throw error("empty variable spec");
    return vars;
}

// JSON job file: {"prime": 3, "variables": [{"name":"x","weight":1}, ...],
// "poly": "...", "e_max": 2, "budget": 2097152, "out": "dir"}.
inline JobSpec job_from_json(const nlohmann::json& j) {
    JobSpec job;
    if (j.contains("prime")) job.prime = j.at("prime").get<long long>();
    if (j.contains("variables")) {
        for (const auto& v : j.at("variables")) {
            job.variables.emplace_back(v.at("name").get<std::string>(),
                                       v.at("weight").get<long long>());
        }
    }
    if (j.contains("poly")) job.poly_text = j.at("poly").get<std::string>();
    if (j.contains("e_max")) job.e_max = j.at("e_max").get<int>();
    if (j.contains("budget")) job.budget = j.at("budget").get<long long>();
    if (j.contains("out")) job.out_dir = j.at("out").get<std::string>();
    return job;
}

// Fields set in `flags` override the base job.
inline JobSpec merge_jobs(JobSpec base, const JobSpec& flags) {
    if (flags.prime != 0) base.prime = flags.prime;
    if (!flags.variables.empty()) base.variables = flags.variables;
    if (!flags.poly_text.empty()) base.poly_text = flags.poly_text;
    if (flags.e_max != 1) base.e_max = flags.e_max;
    if (flags.budget != default_budget) base.budget = flags.budget;
    if (!flags.out_dir.empty()) base.out_dir = flags.out_dir;
    return base;
}

inline ValidatedJob validate_job(const JobSpec& job) {
    if (!job.has_ring()) throw error("job needs a prime and at least one variable");
    if (job.e_max < 1) throw error("e_max must be at least 1");
    ValidatedJob v;
    v.ring = make_ring(job.prime, job.variables);
    if (!job.poly_text.empty()) v.poly = parse_poly(job.poly_text, v.ring);
    return v;
}

} // namespace fsig
