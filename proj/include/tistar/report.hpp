#pragma once

#include "tistar/cochain.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace tistar {

// Reports use ordered_json so key order (and therefore the serialized bytes)
// is deterministic for a fixed seed/config/build. Wall-clock timing is logged
// to stderr, never embedded.
using Report = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "1";

inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

inline Report predicate_to_json(const PredicateReport& r) {
    Report j;
    j["name"] = r.name;
    j["max_residual"] = r.max_residual;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    nlohmann::ordered_json worst = nlohmann::ordered_json::array();
    for (const auto& p : r.worst_point) {
        nlohmann::ordered_json v = nlohmann::ordered_json::array();
        for (int i = 0; i < p.size(); ++i) v.push_back(p[i]);
        worst.push_back(v);
    }
    j["worst_point"] = worst;
    return j;
}

inline Report make_report_skeleton(const std::string& command, std::uint64_t seed) {
    Report j;
    j["command"] = command;
    j["version"] = kReportVersion;
    j["seed"] = seed;
    j["inputs"] = Report::object();
    j["results"] = Report::object();
    j["pass"] = false;
    return j;
}

}  // namespace tistar
