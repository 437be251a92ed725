#pragma once

#include "colocal/colocal.hpp"
#include "colocal/equivariant.hpp"
#include "colocal/specpage.hpp"

#include <json.hpp>

#include <exception>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace colocal {

using Json = nlohmann::ordered_json;

struct ModuleSpec {
    std::vector<ModuleGenerator> generators;
    /// Each relation maps generator names to ring elements; absent generators get zero.
    std::vector<std::map<std::string, std::string>> relations;
};

/// A job file. Graded jobs describe a ring, a module and an ideal; equivariant jobs name a builder.
struct JobSpec {
    std::string command;  // optional hint from the file
    Scalars scalars;
    std::vector<Variable> variables;
    std::vector<std::string> relations;
    bool strict_commutativity = false;
    std::optional<ModuleSpec> module;  // default: the ring itself
    std::vector<std::string> ideal;
    int window_min = 0, window_max = 0;
    StabilizationPolicy policy;
    /// page: compare with s -> H^{-a-s} computed from the ring's own homology.
    std::optional<int> poincare_dimension;
    std::string builder;  // equivariant
    int n = 0;
    std::optional<int> algebra_top;

    bool graded() const { return builder.empty(); }
    RingPtr ring() const;
    GradedModule module_over(const RingPtr& r) const;
    IdealSpec ideal_over(const RingPtr& r) const;
    Json to_json() const;
};

/// Throws ValidationError on any schema violation.
JobSpec parse_job(const Json& j);
JobSpec load_job(const std::string& path);
Json load_json(const std::string& path);

struct Report {
    std::string command;
    Json machine;
    std::string text;
    double seconds = 0;
};

Json group_to_json(const FGAbGroup& g);
FGAbGroup group_from_json(const Json& j);
/// Z^2 + Z/2 over the integers, Q^3 or GF(p)^3 over fields.
std::string render_group(const FGAbGroup& g, const Scalars& s);

Report cmd_lc(const JobSpec& job);
Report cmd_triangle(const JobSpec& job);
Report cmd_page(const JobSpec& job, const std::optional<std::map<int, FGAbGroup>>& target = std::nullopt);
Report cmd_equivariant(const JobSpec& job);

/// Target file: {"target": [{"s": -7, "group": {...}}, ...]}.
std::map<int, FGAbGroup> load_target(const std::string& path);

/// Every group table of a machine report by name, keyed by (index, degree).
std::map<std::string, std::map<Bidegree, FGAbGroup>> report_tables(const Json& machine);

/// Process exit status for an error escaping a command: 2 validation, 3 no stabilization,
/// 4 no collapse or unresolvable corner, 1 otherwise.
int exit_code_for(const std::exception& e);

std::string dump(const Json& j);

}  // namespace colocal
