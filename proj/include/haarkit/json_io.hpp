#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "haarkit/convergence.hpp"
#include "haarkit/fourier.hpp"
#include "haarkit/group.hpp"
#include "haarkit/measure.hpp"

namespace haarkit {

using json = nlohmann::json;

/// Export format: {order, table (row-major), labels}. Indices round-trip
/// exactly; bit-exactness of anything else is not promised.
inline json group_to_json(const GroupPtr& g) {
    json j;
    j["order"] = g->order();
    j["table"] = g->table();
    if (!g->labels().empty()) j["labels"] = g->labels();
    return j;
}

inline GroupPtr group_from_json(const json& j) {
    const int order = j.at("order").get<int>();
    const auto flat = j.at("table").get<std::vector<int>>();
    if (static_cast<int>(flat.size()) != order * order)
        throw Error("group json: table must have order^2 entries");
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    for (int i = 0; i < order; ++i)
        for (int k = 0; k < order; ++k) table[i][k] = flat[static_cast<size_t>(i) * order + k];
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return FiniteGroup::from_table(table, std::move(labels));
}

/// {group_ref, mass}; group_ref is an opaque descriptor chosen by the caller.
inline json distribution_to_json(const GroupDistribution& p, const std::string& group_ref) {
    json j;
    j["group_ref"] = group_ref;
    j["mass"] = p.masses();
    return j;
}

inline json fourier_to_json(const FourierDensity& d) {
    json j;
    j["amps"] = d.amps();
    j["phases"] = d.phases();
    return j;
}

inline FourierDensity fourier_from_json(const json& j) {
    return make_density(j.at("amps").get<std::vector<double>>(),
                        j.at("phases").get<std::vector<double>>());
}

inline const char* obstruction_name(Obstruction v) {
    switch (v) {
        case Obstruction::converges: return "converges";
        case Obstruction::subgroup_supported: return "subgroup_supported";
        case Obstruction::coset_supported: return "coset_supported";
    }
    return "unknown";
}

inline json obstruction_to_json(const ObstructionReport& r) {
    json j;
    j["verdict"] = obstruction_name(r.verdict);
    if (r.subgroup) j["subgroup"] = r.subgroup->members;
    if (r.coset_rep) j["coset_rep"] = *r.coset_rep;
    if (r.period) j["period"] = *r.period;
    return j;
}

}  // namespace haarkit
