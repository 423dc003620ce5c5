#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "umx/dynamics.hpp"
#include "umx/gen.hpp"
#include "umx/probe.hpp"
#include "umx/proximity.hpp"
#include "umx/space.hpp"

namespace umx {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// primitives

inline Json rat_json(const Rat& r) { return Json(r.str()); }

inline Rat rat_from_json(const Json& j, const std::string& where) {
    if (!j.is_string())
        throw ParseError(where + ": rationals are strings like \"3\" or \"1/2\"");
    try {
        return Rat::parse(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

/// Point set as a label array, lexicographically sorted.
inline Json pointset_json(const PointSet& s) {
    std::vector<std::string> labels;
    labels.reserve(s.size());
    for (int p : s.members()) labels.push_back(s.space().label(p));
    std::sort(labels.begin(), labels.end());
    return Json(labels);
}

inline void require_keys(const Json& j, const std::vector<std::string>& keys,
                         const std::string& what) {
    if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
    for (const auto& k : keys)
        if (!j.contains(k)) throw ParseError(what + ": missing key \"" + k + "\"");
    for (const auto& [k, v] : j.items()) {
        (void)v;
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw ParseError(what + ": unexpected key \"" + k + "\"");
    }
}

// ---------------------------------------------------------------------------
// space document: {"points": [...], "dist": [[...]]}

inline Json space_json(const Space& sp) {
    Json j;
    j["points"] = sp.labels();
    Json rows = Json::array();
    for (int i = 0; i < sp.size(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < sp.size(); ++k) row.push_back(rat_json(sp.dist(i, k)));
        rows.push_back(std::move(row));
    }
    j["dist"] = std::move(rows);
    return j;
}

inline ValidationResult space_from_json(const Json& j) {
    require_keys(j, {"points", "dist"}, "space document");
    if (!j["points"].is_array() || j["points"].empty())
        throw ParseError("space document: \"points\" must be a nonempty array of labels");
    std::vector<std::string> labels;
    for (const auto& p : j["points"]) {
        if (!p.is_string()) throw ParseError("space document: point labels must be strings");
        labels.push_back(p.get<std::string>());
    }
    if (!j["dist"].is_array())
        throw ParseError("space document: \"dist\" must be an array of rows");
    std::vector<std::vector<Rat>> matrix;
    int row_idx = 0;
    for (const auto& row : j["dist"]) {
        if (!row.is_array()) throw ParseError("space document: each dist row must be an array");
        std::vector<Rat> r;
        int col_idx = 0;
        for (const auto& cell : row) {
            r.push_back(rat_from_json(cell, "dist[" + std::to_string(row_idx) + "][" +
                                                std::to_string(col_idx) + "]"));
            ++col_idx;
        }
        matrix.push_back(std::move(r));
        ++row_idx;
    }
    return validate_ultrametric(std::move(labels), std::move(matrix));
}

// ---------------------------------------------------------------------------
// pair fragment: {"A": [...], "B": [...]}

struct PairSelection {
    PointSet A;
    PointSet B;
};

inline Json pair_json(const PointSet& A, const PointSet& B) {
    Json j;
    j["A"] = pointset_json(A);
    j["B"] = pointset_json(B);
    return j;
}

inline PairSelection pair_from_json(const SpacePtr& space, const Json& j) {
    require_keys(j, {"A", "B"}, "pair fragment");
    auto read_side = [&](const char* key) {
        if (!j[key].is_array())
            throw ParseError(std::string("pair fragment: \"") + key + "\" must be a label array");
        std::vector<std::string> labels;
        for (const auto& l : j[key]) {
            if (!l.is_string())
                throw ParseError(std::string("pair fragment: \"") + key + "\" holds non-string entries");
            labels.push_back(l.get<std::string>());
        }
        if (labels.empty())
            throw EmptySetError(std::string("pair fragment: \"") + key + "\" is empty");
        return make_subset(space, labels);
    };
    return {read_side("A"), read_side("B")};
}

// ---------------------------------------------------------------------------
// map document: {"domain": [...], "table": {...}}

inline Json map_json(const SelfMap& F) {
    const Space& sp = F.space();
    std::vector<std::string> domain;
    for (int x : F.domain_members()) domain.push_back(sp.label(x));
    std::sort(domain.begin(), domain.end());
    Json table = Json::object();
    for (const auto& l : domain) table[l] = sp.label(F.apply(sp.require_index(l)));
    Json j;
    j["domain"] = domain;
    j["table"] = std::move(table);
    return j;
}

inline SelfMap map_from_json(const SpacePtr& space, const Json& j) {
    require_keys(j, {"domain", "table"}, "map document");
    if (!j["domain"].is_array() || j["domain"].empty())
        throw ParseError("map document: \"domain\" must be a nonempty label array");
    std::vector<std::string> labels;
    for (const auto& l : j["domain"]) {
        if (!l.is_string()) throw ParseError("map document: domain labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    PointSet domain = make_subset(space, labels);
    if (!j["table"].is_object()) throw ParseError("map document: \"table\" must be an object");
    std::map<int, int> table;
    for (const auto& [k, v] : j["table"].items()) {
        if (!v.is_string()) throw ParseError("map document: table values must be labels");
        table[space->require_index(k)] = space->require_index(v.get<std::string>());
    }
    try {
        return SelfMap::from_pairs(domain, table);
    } catch (const DomainMismatchError& e) {
        throw ParseError(std::string("map document: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// reports

inline Json violation_json(const Space* sp, const std::vector<std::string>& labels,
                           const Violation& v) {
    auto name = [&](int i) { return sp ? sp->label(i) : labels[static_cast<std::size_t>(i)]; };
    Json j;
    j["kind"] = Violation::kind_name(v.kind);
    Json pts = Json::array();
    pts.push_back(name(v.x));
    if (v.y >= 0 && v.y != v.x) pts.push_back(name(v.y));
    if (v.z >= 0) pts.push_back(name(v.z));
    j["points"] = std::move(pts);
    return j;
}

inline Json proximity_report_json(const ProximityReport& rep) {
    const Space& sp = rep.A0.space();
    Json j;
    j["A0"] = pointset_json(rep.A0);
    j["B0"] = pointset_json(rep.B0);
    j["dist"] = rat_json(rep.dist);
    j["deltaA"] = rat_json(rep.deltaA);
    j["deltaB"] = rat_json(rep.deltaB);
    Json pairs = Json::array();
    for (const auto& [a, b] : rep.pairs) pairs.push_back(Json::array({sp.label(a), sp.label(b)}));
    j["pairs"] = std::move(pairs);
    j["separated"] = rep.separated;
    return j;
}

inline Json theorem25_json(const Space& sp, const Theorem25Report& rep) {
    Json j;
    j["stmt_i"] = Json{{"holds", rep.stmt_i},
                       {"witness", rep.witness_a ? Json(sp.label(*rep.witness_a)) : Json(nullptr)}};
    j["stmt_ii"] = rep.stmt_ii;
    j["stmt_iii"] = Json{{"holds", rep.stmt_iii.holds},
                         {"checks",
                          Json{{"B0_equals_B", rep.stmt_iii.B0_equals_B},
                               {"dist_preserved", rep.stmt_iii.dist_preserved},
                               {"all_pairs_best", rep.stmt_iii.all_pairs_best},
                               {"A0_proximinal", rep.stmt_iii.A0_proximinal},
                               {"B0_proximinal", rep.stmt_iii.B0_proximinal}}}};
    j["equivalent"] = rep.equivalent;
    return j;
}

inline Json minimal_ball_json(const MinimalBall& mb) {
    Json j;
    j["center"] = mb.members.space().label(mb.center);
    j["radius"] = rat_json(mb.radius);
    j["members"] = pointset_json(mb.members);
    return j;
}

inline Json classification_json(const Space& sp, const Classification& cls) {
    Json j;
    j["statement"] = Classification::statement_name(cls.statement);
    j["a_star"] = sp.label(cls.a_star);
    j["b_star"] = sp.label(cls.b_star);
    j["ballA"] = cls.ballA ? minimal_ball_json(*cls.ballA) : Json(nullptr);
    j["ballB"] = cls.ballB ? minimal_ball_json(*cls.ballB) : Json(nullptr);
    return j;
}

/// Full repro bundle for failures and probe counterexamples.
inline Json instance_json(const SpacePtr& space, const PointSet* A, const PointSet* B,
                          const SelfMap* F) {
    Json j;
    j["space"] = space_json(*space);
    if (A && B) j["pair"] = pair_json(*A, *B);
    if (F) j["map"] = map_json(*F);
    return j;
}

inline Json probe_report_json(const ProbeReport& rep) {
    Json j;
    j["instances_checked"] = rep.instances_checked;
    if (!rep.interpretation.empty()) j["interpretation"] = rep.interpretation;
    Json stats = Json::object();
    for (const auto& [k, v] : rep.stats) stats[k] = v;
    j["stats"] = std::move(stats);
    if (rep.counterexample) {
        const auto& ce = *rep.counterexample;
        Json inst = instance_json(ce.space, &ce.A, &ce.B, &ce.F);
        inst["note"] = ce.note;
        j["counterexample"] = std::move(inst);
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

struct Verdict {
    std::string property;
    bool pass = false;
    Json witness = nullptr;
};

inline Json run_report_json(const std::string& command, Json inputs, Json result,
                            const std::vector<Verdict>& verdicts) {
    Json j;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["result"] = std::move(result);
    Json vs = Json::array();
    for (const auto& v : verdicts)
        vs.push_back(Json{{"property", v.property}, {"pass", v.pass}, {"witness", v.witness}});
    j["verdicts"] = std::move(vs);
    return j;
}

} // namespace umx
