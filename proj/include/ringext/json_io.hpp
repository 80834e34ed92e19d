#pragma once

// JSON serialization of weights, matrices, verdicts, and reports. Every
// rational is emitted as an exact string ("p" or "p/q"); weight files accept
// integers or such strings.

#include "ringext/oracle.hpp"

#include <json.hpp>

#include <fstream>

namespace ringext {

using nlohmann::json;

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw SpecError("expected a rational as integer or \"p/q\" string, got " + j.dump());
}

inline json rat_to_json(const Rat& r) { return rat_to_string(r); }

// --------------------------------------------------------------------------
// Weights
// --------------------------------------------------------------------------

inline Weight weight_from_json(const RingContext& ctx, const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw SpecError("weight file must have a kind");
    const std::string kind = j.at("kind").get<std::string>();
    const RingPtr& ring = ctx.ring;
    if (kind == "hamming") return hamming_weight(ring);
    if (kind == "homogeneous") {
        Rat gamma(1);
        if (j.contains("gamma")) gamma = rat_from_json(j.at("gamma"));
        return homogeneous_weight(ctx, gamma);
    }
    if (kind == "lee") return lee_weight(ring);
    if (kind == "rank") {
        std::vector<Rat> values;
        if (j.contains("ranks"))
            for (const auto& v : j.at("ranks")) values.push_back(rat_from_json(v));
        return rank_weight(ring, std::move(values));
    }
    if (kind != "table") throw SpecError("unknown weight kind '" + kind + "'");

    if (!j.contains("values") || !j.at("values").is_object())
        throw SpecError("table weight needs a values object keyed by element or orbit labels");
    std::map<std::string, Rat> table;
    for (const auto& [key, val] : j.at("values").items()) table[key] = rat_from_json(val);

    const OrbitPartition& orb = ring->orbits(OrbitKind::two_sided);
    const std::string zero_label = ring->label(ring->zero());

    bool element_mode = true;
    for (ElemIdx x = 0; x < ring->order() && element_mode; ++x)
        if (x != ring->zero() && table.find(ring->label(x)) == table.end()) element_mode = false;

    if (element_mode) {
        std::vector<Rat> vals(ring->order(), Rat(0));
        for (ElemIdx x = 0; x < ring->order(); ++x) {
            auto it = table.find(ring->label(x));
            if (it != table.end()) vals[x] = it->second;
        }
        return Weight::from_element_values(ring, vals);
    }

    std::vector<Rat> class_vals(orb.size(), Rat(0));
    Rat w0(0);
    std::string missing;
    for (std::size_t c = 0; c < orb.size(); ++c) {
        const ElemIdx rep = orb.rep(c);
        auto it = table.find(ring->label(rep));
        if (it == table.end()) {
            if (rep == ring->zero()) continue;  // zero entry optional
            missing = ring->label(rep);
            break;
        }
        if (rep == ring->zero())
            w0 = it->second;
        else
            class_vals[c] = it->second;
    }
    if (!missing.empty())
        throw SpecError("weight table misses entries: not all elements and not all orbit "
                        "representatives are covered (first missing representative: '" +
                        missing + "')");
    return Weight::from_class_values(ring, std::move(class_vals), std::move(w0));
}

inline Weight weight_from_file(const RingContext& ctx, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open weight file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SpecError("weight file '" + path + "' is not valid JSON: " + e.what());
    }
    return weight_from_json(ctx, j);
}

inline json weight_to_json(const Weight& w) {
    const RingPtr& ring = w.ring();
    const OrbitPartition& orb = ring->orbits(OrbitKind::two_sided);
    json values = json::object();
    for (std::size_t c = 0; c < orb.size(); ++c) {
        const ElemIdx rep = orb.rep(c);
        values[ring->label(rep)] = rat_to_json(w.at(rep));
    }
    return json{{"kind", "table"}, {"values", values}};
}

// --------------------------------------------------------------------------
// Matrices
// --------------------------------------------------------------------------

inline json matrix_to_json(const RingContext& ctx, const OrthMatrix& om) {
    json entries = json::array();
    for (std::size_t i = 0; i < om.m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < om.m.cols(); ++j) row.push_back(rat_to_string(om.m.at(i, j)));
        entries.push_back(std::move(row));
    }
    json rows = json::array(), cols = json::array();
    for (int id : om.row_ids) rows.push_back(ctx.ideal_label(om.row_side, id));
    for (int id : om.col_ids) cols.push_back(ctx.ideal_label(om.col_side, id));
    return json{{"kind", om_kind_name(om.kind)},
                {"ordering", om.ordering},
                {"rows", rows},
                {"cols", cols},
                {"entries", entries}};
}

inline RatMat matrix_entries_from_json(const json& j) {
    const auto& entries = j.at("entries");
    const std::size_t r = entries.size();
    const std::size_t c = r == 0 ? 0 : entries.at(0).size();
    RatMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < c; ++k) m.at(i, k) = rat_from_json(entries.at(i).at(k));
    return m;
}

// --------------------------------------------------------------------------
// Reports
// --------------------------------------------------------------------------

inline json classification_to_json(const RingContext& ctx) {
    return json{{"is_frobenius", ctx.cls.is_frobenius},
                {"is_pir", ctx.cls.is_pir},
                {"socles_coincide", ctx.cls.socles_coincide},
                {"socle_right", ctx.ideal_label(Side::right, ctx.soc_right_id)},
                {"socle_left", ctx.ideal_label(Side::left, ctx.soc_left_id)},
                {"left_ideals", ctx.left->size()},
                {"right_ideals", ctx.right->size()},
                {"left_principal_ideals", ctx.left->principal_ids.size()},
                {"right_principal_ideals", ctx.right->principal_ids.size()}};
}

inline json verdict_to_json(const RingContext& ctx, const CriterionVerdict& v) {
    json factors = json::object();
    json socle_factors = json::array();
    for (const CriterionFactor& f : v.factors) {
        const std::string label = ctx.ideal_label(Side::right, f.right_id);
        factors[label] = rat_to_string(f.value);
        if (f.in_socle) socle_factors.push_back(label);
    }
    json out{{"is_pir", v.is_pir},
             {"is_frobenius", v.is_frobenius},
             {"socle_reduced", v.socle_reduced},
             {"route", v.route},
             {"passes", v.passes},
             {"factors", factors},
             {"socle_factors", socle_factors}};
    out["det_W0"] = v.det_w0 ? json(rat_to_string(*v.det_w0)) : json();
    out["det_via_factorization"] =
        v.det_factorized ? json(rat_to_string(*v.det_factorized)) : json();
    return out;
}

inline json ideals_to_json(const RingContext& ctx, Side side, bool all) {
    const IdealLattice& lat = ctx.lat(side);
    json out = json::array();
    for (const Ideal& I : lat.ideals) {
        if (!all && !I.principal) continue;
        json gens = json::array();
        for (ElemIdx g : I.generators) gens.push_back(ctx.ring->label(g));
        json covers = json::array();
        for (int c : lat.covers(I.id)) covers.push_back(c);
        out.push_back(json{{"id", I.id},
                           {"label", ctx.ideal_label(side, I.id)},
                           {"cardinality", I.card},
                           {"principal", I.principal},
                           {"generators", gens},
                           {"covers", covers},
                           {"mu0", rat_to_string(ctx.mobius(side).mu_from_zero(I.id))}});
    }
    return out;
}

inline json tuple_to_json(const FiniteRing& ring, const Tuple& t) {
    json out = json::array();
    for (ElemIdx x : t) out.push_back(ring.label(x));
    return out;
}

inline json counterexample_to_json(const RingContext& ctx, const CounterexamplePair& pair,
                                   const ExtendResult& ext) {
    json v = json::array();
    for (const Int& x : pair.v) v.push_back(x.str());
    json out{{"null_vector", v},
             {"g_plus", tuple_to_json(*ctx.ring, pair.g_plus)},
             {"g_minus", tuple_to_json(*ctx.ring, pair.g_minus)},
             {"length", pair.n},
             {"checks",
              json{{"difference_D_vanishes", true},
                   {"orbit_multisets_differ", true},
                   {"extendable", ext.extendable},
                   {"monomial_maps_tried", ext.maps_tried}}}};
    return out;
}

inline json oracle_to_json(const RingContext& ctx, const OracleReport& rep) {
    json out{{"completed", rep.completed},
             {"codes_checked", rep.codes_checked},
             {"isometries_checked", rep.isometries_checked},
             {"failures", rep.failures},
             {"budget_used", rep.budget_used}};
    if (rep.completed) out["holds"] = rep.holds;
    if (rep.witness) {
        json gens = json::array(), images = json::array();
        for (const Tuple& t : rep.witness->gens) gens.push_back(tuple_to_json(*ctx.ring, t));
        for (const Tuple& t : rep.witness->images) images.push_back(tuple_to_json(*ctx.ring, t));
        out["witness"] = json{{"length", rep.witness->n}, {"generators", gens}, {"images", images}};
    }
    return out;
}

}  // namespace ringext
