#pragma once

#include "colocal/io.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace colocal {

struct SuiteResult {
    explicit SuiteResult(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    std::size_t cases = 0;
    std::vector<std::string> failures;
    double seconds = 0;

    bool passed() const { return failures.empty() && cases > 0; }
};

/// Seeds and sizes of the randomized suites, read from property_seeds.json.
struct CheckConfig {
    std::uint64_t snf_seed = 1, module_seed = 2, bounded_seed = 3;
    std::size_t snf_count = 500, module_count = 100, bounded_count = 50;
    std::size_t snf_max_dim = 8;
    long snf_entry = 20;
    int max_width = 24;
};

CheckConfig load_check_config(const std::string& path);

/// U A V = D with unimodular U, V and a divisibility chain on the diagonal.
SuiteResult check_snf(std::uint64_t seed, std::size_t count, std::size_t max_dim, long entry);

/// Random modules, half over Z[v] with I = (v) and half over F_3[u,v] with I = (u,v).
/// Returns four suites: H^0 against the torsion radical, Koszul against Cech,
/// vanishing above the number of generators (also for a redundant generating set),
/// and exactness of the triangle's long exact sequence.
std::vector<SuiteResult> check_modules(std::uint64_t seed, std::size_t count, int max_width);

/// Random modules with a grading bound q0: local cohomology is concentrated in H^0,
/// equals the module and vanishes above q0.
SuiteResult check_bounded(std::uint64_t seed, std::size_t count);

/// Reruns every data/golden/<job>.<command>.json and compares the machine report byte for byte.
SuiteResult check_golden(const std::string& data_dir);

/// Every suite above, seeds from data_dir/property_seeds.json.
Report cmd_check(const std::string& data_dir);

/// Machine report for one golden file name such as "stiefel.lc".
Json golden_report(const std::string& data_dir, const std::string& stem);

}  // namespace colocal
