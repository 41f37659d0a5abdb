#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>  // nlohmann/json (vendored)

#include "gaugelab/core/errors.hpp"

namespace gaugelab {

struct QuantityDeviation {
    std::string name;
    double max_dev = 0.0;
};

/// Comparison of two gauges. `matched` lists quantities asserted to be gauge
/// invariant together with their measured deviation; `differed` lists
/// quantities expected to change. pass holds iff every matched deviation is
/// within tolerance.
struct InvarianceReport {
    std::vector<QuantityDeviation> matched;
    std::vector<QuantityDeviation> differed;
    double tolerance = 0.0;
    bool pass = false;

    void add_matched(std::string name, double dev) { matched.push_back({std::move(name), dev}); }
    void add_differed(std::string name, double dev) { differed.push_back({std::move(name), dev}); }

    /// Recomputes pass from the matched entries.
    void finalize() {
        pass = std::all_of(matched.begin(), matched.end(),
                           [&](const QuantityDeviation& q) { return q.max_dev <= tolerance; });
    }

    const QuantityDeviation* find(const std::string& name) const {
        for (const auto* list : {&matched, &differed})
            for (const auto& q : *list)
                if (q.name == name) return &q;
        return nullptr;
    }

    /// Throws UsageError for a degenerate report (nothing compared, or a
    /// quantity listed as both matched and differed).
    void validate() const {
        if (matched.empty() && differed.empty()) throw UsageError("invariance report has no entries");
        std::set<std::string> names;
        for (const auto& q : matched) names.insert(q.name);
        for (const auto& q : differed)
            if (names.count(q.name)) throw UsageError("quantity '" + q.name + "' is both matched and differed");
    }
};

inline nlohmann::json to_json(const InvarianceReport& r) {
    auto list = [](const std::vector<QuantityDeviation>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& q : v) a.push_back({{"name", q.name}, {"max_dev", q.max_dev}});
        return a;
    };
    return {{"matched", list(r.matched)}, {"differed", list(r.differed)}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

}  // namespace gaugelab
