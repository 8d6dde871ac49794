#pragma once

#include "json.hpp"

#include <map>

#include "padyn/formal_group.hpp"
#include "padyn/semiconj.hpp"

namespace padyn {

using ordered_json = nlohmann::ordered_json;

/// Parsed problem file: ring description, named series, task list.
struct ProblemDocument {
    RingPtr ring;
    long cap = 24;
    long total_cap = 0; // 0: derive as cap / 2
    std::map<std::string, TruncSeries> series; // degree-1 indexed (dynamics)
    std::map<std::string, TruncSeries> units;  // degree-0 indexed
    std::vector<ordered_json> tasks;

    const TruncSeries& named(const std::string& name) const;
    long effective_total_cap() const { return total_cap > 0 ? total_cap : cap / 2; }
};

/// Strict-schema load; unknown fields are rejected.
ProblemDocument parse_problem(const ordered_json& doc);
ProblemDocument load_problem_file(const std::string& path);

/// Scalar literal: integer, "a/b", "p^v*u", or coordinate array.
PadicScalar parse_scalar(const ordered_json& j, const RingPtr& cfg);

/// One task; never throws for mathematical outcomes (they land in the report),
/// only for malformed requests.
ordered_json run_task(const ProblemDocument& doc, const ordered_json& task);

/// All tasks of a document, wrapped with ring/precision metadata.
ordered_json run_document(const ProblemDocument& doc);

/// Built-in regression suite over the worked examples.
ordered_json run_selftest();

/// certified / certified-negative / indeterminate-at-precision -> 0 / 1 / 2.
int exit_code_for(const ordered_json& report);

} // namespace padyn
