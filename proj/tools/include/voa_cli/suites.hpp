#pragma once

#include "voa_cli/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace voa::cli {

struct SuiteInfo {
    int criterion = 0;
    std::string name;
    std::string title;
    double limit_seconds = 0.0;  // 0 when no runtime bound applies
};

// Criteria 1..12 in order.
const std::vector<SuiteInfo>& suite_catalog();

struct SuiteResult {
    std::string name;
    int criterion = 0;
    bool pass = false;
    long instances = 0;
    long failures = 0;
    std::vector<std::string> witnesses;  // the first few failures
    Json details = Json::object();
};

// Each suite draws from mt19937_64 seeded with seed_seq{seed, criterion}.
// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

Json to_json(const SuiteResult& r);

}  // namespace voa::cli
