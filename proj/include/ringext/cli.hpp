#pragma once

// Command line front end. Subcommands: analyze, ideals, matrix, criterion,
// counterexample, oracle, validate. JSON reports on stdout (default) or a
// plain text rendering with --format text.
//
// Exit codes: 0 success; 1 criterion failed and --strict was given;
// 2 input errors or exceeded budgets.

#include "ringext/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

namespace ringext {

namespace cli_detail {

struct CommonOpts {
    std::string ring_spec;
    std::string weight_path;
    std::string format = "json";
    std::size_t max_order = 4096;
    std::uint64_t search_budget = 100000000;
    bool strict = false;
    bool max_order_given = false;
};

inline void add_common(CLI::App* cmd, CommonOpts& o, bool needs_weight) {
    cmd->add_option("--ring", o.ring_spec, "ring spec, e.g. \"Z(4)\" or \"Mat(2,GF(3))\"")
        ->required();
    if (needs_weight)
        cmd->add_option("--weight", o.weight_path, "weight file (JSON)")->required();
    cmd->add_option("--format", o.format, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--max-order", o.max_order, "ring order cap (env RINGEXT_MAX_ORDER)");
    cmd->add_option("--search-budget", o.search_budget, "elementary-step budget for searches");
    cmd->add_flag("--strict", o.strict, "exit 1 when the criterion fails");
}

inline BuildLimits limits_of(const CommonOpts& o, const CLI::App* cmd) {
    BuildLimits lim;
    lim.max_order = o.max_order;
    if (cmd->count("--max-order") == 0) {
        if (const char* env = std::getenv("RINGEXT_MAX_ORDER")) lim.max_order = std::stoull(env);
    }
    return lim;
}

inline void render_text(const json& j, std::ostream& out, int indent = 0) {
    const std::string pad(indent, ' ');
    if (j.is_object()) {
        for (const auto& [key, val] : j.items()) {
            if (val.is_object() || (val.is_array() && !val.empty() && !val.at(0).is_number() &&
                                    !val.at(0).is_string())) {
                out << pad << key << ":\n";
                render_text(val, out, indent + 2);
            } else {
                out << pad << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump())
                    << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object()) {
                render_text(v, out, indent + 2);
                out << pad << "-\n";
            } else {
                out << pad << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else {
        out << pad << j.dump() << "\n";
    }
}

inline void emit(const json& j, const CommonOpts& o, std::ostream& out) {
    if (o.format == "text")
        render_text(j, out);
    else
        out << j.dump(2) << "\n";
}

inline json analyze_report(const RingContext& ctx, const Weight& w, bool socle_reduction,
                           std::uint64_t budget, bool dump_matrices) {
    json rep;
    rep["ring"] = ctx.ring->spec_string();
    rep["order"] = ctx.ring->order();
    rep["classification"] = classification_to_json(ctx);

    const SymmetryGroups sym = symmetry_groups(*ctx.ring, w.dense());
    rep["weight"] = json{{"bi_invariant", true},
                         {"w0", rat_to_string(w.w0())},
                         {"values", weight_to_json(w).at("values")},
                         {"left_symmetry_group_size", sym.g_lt.size()},
                         {"right_symmetry_group_size", sym.g_rt.size()},
                         {"units", ctx.ring->units().size()}};

    const CriterionVerdict v = criterion(ctx, w, socle_reduction);
    rep["criterion"] = verdict_to_json(ctx, v);

    if (dump_matrices) {
        json mats;
        for (OmKind k : {OmKind::W0, OmKind::W, OmKind::Q, OmKind::T, OmKind::WQ})
            mats[om_kind_name(k)] = matrix_to_json(ctx, build_matrix(ctx, k, &w));
        rep["matrices"] = std::move(mats);
    }

    if (v.det_w0 && *v.det_w0 == 0) {
        const OrthMatrix w0m = build_w0(ctx, w);
        if (auto nv = null_vector_integer(w0m.m)) {
            try {
                const CounterexamplePair pair = build_counterexample(ctx, w, *nv);
                ExtendResult ext;
                try {
                    ext = is_extendable(w, pair.n, {pair.g_plus}, {pair.g_minus}, budget);
                    rep["counterexample"] = counterexample_to_json(ctx, pair, ext);
                } catch (const BudgetError& e) {
                    rep["counterexample"] = json{{"g_plus", tuple_to_json(*ctx.ring, pair.g_plus)},
                                                 {"g_minus", tuple_to_json(*ctx.ring, pair.g_minus)},
                                                 {"monomial_search", std::string("skipped: ") + e.what()}};
                }
            } catch (const SpecError& e) {
                rep["counterexample"] = json{{"error", e.what()}};
            }
        }
    }
    return rep;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    using namespace cli_detail;
    CLI::App app{"ringext: does a bi-invariant weight on a finite ring satisfy the "
                 "MacWilliams Extension Property?"};
    app.require_subcommand(1);

    CommonOpts o;
    bool no_socle_reduction = false;
    bool dump_matrices = false;
    std::string side_str = "right";
    bool all_ideals_flag = false;
    std::string which = "W0";
    std::string w0_str;
    int max_len = 2;

    CLI::App* c_analyze = app.add_subcommand("analyze", "classification + criterion + determinants");
    add_common(c_analyze, o, true);
    c_analyze->add_flag("--no-socle-reduction", no_socle_reduction,
                        "decide from all factors, not only those inside the socle");
    c_analyze->add_flag("--dump-matrices", dump_matrices, "include W0, W, Q, T, WQ in the report");

    CLI::App* c_ideals = app.add_subcommand("ideals", "ideal lattice report");
    add_common(c_ideals, o, false);
    c_ideals->add_option("--side", side_str, "left|right")->check(CLI::IsMember({"left", "right"}));
    c_ideals->add_flag("--all", all_ideals_flag, "include non-principal ideals");

    CLI::App* c_matrix = app.add_subcommand("matrix", "emit W0, W, Q, T or WQ");
    add_common(c_matrix, o, true);
    c_matrix->add_option("--which", which, "W0|W|Q|T|WQ")
        ->check(CLI::IsMember({"W0", "W", "Q", "T", "WQ"}));
    c_matrix->add_option("--w0", w0_str, "value for the w(0) parameter of W/WQ");

    CLI::App* c_criterion = app.add_subcommand("criterion", "Extension Property criterion");
    add_common(c_criterion, o, true);
    c_criterion->add_flag("--no-socle-reduction", no_socle_reduction,
                          "decide from all factors, not only those inside the socle");

    CLI::App* c_counter = app.add_subcommand("counterexample",
                                             "build the code pair witnessing a criterion failure");
    add_common(c_counter, o, true);

    CLI::App* c_oracle = app.add_subcommand("oracle", "brute-force Extension Property check");
    add_common(c_oracle, o, true);
    c_oracle->add_option("--max-len", max_len, "maximum code length (default 2)");

    CLI::App* c_validate = app.add_subcommand("validate", "ring axioms and structure report");
    add_common(c_validate, o, false);

    std::vector<const char*> argv{"ringext"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const auto t_start = std::chrono::steady_clock::now();
    auto finish = [&](json rep, int code) {
        rep["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t_start)
                               .count();
        emit(rep, o, out);
        return code;
    };

    try {
        CLI::App* sub = app.get_subcommands().front();
        const BuildLimits lim = limits_of(o, sub);
        const RingPtr ring = build_ring(o.ring_spec, lim);
        const RingContext ctx(ring, lim);

        if (sub == c_validate) {
            json rep;
            rep["ring"] = ring->spec_string();
            rep["order"] = ring->order();
            rep["units"] = ring->units().size();
            rep["orbits"] = json{{"left", ring->orbits(OrbitKind::left).size()},
                                 {"right", ring->orbits(OrbitKind::right).size()},
                                 {"two_sided", ring->orbits(OrbitKind::two_sided).size()}};
            rep["classification"] = classification_to_json(ctx);
            if (ring->order() <= lim.table_validation_cap) {
                TableData t;
                t.order = ring->order();
                for (ElemIdx i = 0; i < ring->order(); ++i)
                    for (ElemIdx j = 0; j < ring->order(); ++j) {
                        t.add.push_back(ring->add(i, j));
                        t.mul.push_back(ring->mul(i, j));
                    }
                const ValidationReport v = validate_table_ring(t);
                rep["axioms"] = json{{"checked", true}, {"valid", v.valid()},
                                     {"violations", v.violations}};
            } else {
                rep["axioms"] = json{{"checked", false},
                                     {"note", "order exceeds exhaustive validation cap"}};
            }
            return finish(rep, 0);
        }

        if (sub == c_ideals) {
            const Side side = side_str == "left" ? Side::left : Side::right;
            json rep;
            rep["ring"] = ring->spec_string();
            rep["side"] = side_str;
            rep["ordering"] = "ascending (cardinality, lexicographic element set)";
            rep["ideals"] = ideals_to_json(ctx, side, all_ideals_flag);
            return finish(rep, 0);
        }

        const Weight w = weight_from_file(ctx, o.weight_path);

        if (sub == c_matrix) {
            OmKind kind = OmKind::W0;
            if (which == "W") kind = OmKind::W;
            if (which == "Q") kind = OmKind::Q;
            if (which == "T") kind = OmKind::T;
            if (which == "WQ") kind = OmKind::WQ;
            std::optional<Rat> w0_override;
            if (!w0_str.empty()) w0_override = rat_from_string(w0_str);
            const OrthMatrix om = build_matrix(ctx, kind, &w, w0_override);
            return finish(matrix_to_json(ctx, om), 0);
        }

        if (sub == c_criterion) {
            const CriterionVerdict v = criterion(ctx, w, !no_socle_reduction);
            json rep = verdict_to_json(ctx, v);
            rep["ring"] = ring->spec_string();
            return finish(rep, o.strict && !v.passes ? 1 : 0);
        }

        if (sub == c_counter) {
            const OrthMatrix w0m = build_w0(ctx, w);
            const auto nv = null_vector_integer(w0m.m);
            if (!nv) throw SpecError("W0 is invertible: no counterexample exists for this weight");
            const CounterexamplePair pair = build_counterexample(ctx, w, *nv);
            const ExtendResult ext =
                is_extendable(w, pair.n, {pair.g_plus}, {pair.g_minus}, o.search_budget);
            json rep = counterexample_to_json(ctx, pair, ext);
            rep["ring"] = ring->spec_string();
            return finish(rep, 0);
        }

        if (sub == c_oracle) {
            const OracleReport rep = oracle_extension_property(w, max_len, o.search_budget);
            json jr = oracle_to_json(ctx, rep);
            jr["ring"] = ring->spec_string();
            jr["max_len"] = max_len;
            return finish(jr, 0);
        }

        // analyze
        const json rep = analyze_report(ctx, w, !no_socle_reduction, o.search_budget, dump_matrices);
        const bool passes = rep.at("criterion").at("passes").get<bool>();
        return finish(rep, o.strict && !passes ? 1 : 0);
    } catch (const SpecError& e) {
        json rep{{"error", e.what()}};
        emit(rep, o, out);
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        json rep{{"error", e.what()}};
        emit(rep, o, out);
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ringext
