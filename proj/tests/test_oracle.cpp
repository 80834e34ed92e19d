#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ringext;
using namespace testing_support;

TEST_CASE("null vectors of W0") {
    RingContext ctx(build_ring("Z(4)"));

    // w(2) = 0: W0 = [[0,0],[0,1]], kernel spanned by e_{2R}
    const Weight bad = Weight::from_element_values(ctx.ring, {Rat(0), Rat(1), Rat(0), Rat(1)});
    const auto nv = null_vector_integer(build_w0(ctx, bad).m);
    REQUIRE(nv.has_value());
    REQUIRE(*nv == std::vector<Int>{Int(1), Int(0)});

    // Lee: invertible, no kernel
    REQUIRE(!null_vector_integer(build_w0(ctx, lee_weight(ctx.ring)).m).has_value());

    // zero weight: first standard basis vector
    const Weight zero = Weight::from_element_values(ctx.ring, std::vector<Rat>(4, Rat(0)));
    REQUIRE(*null_vector_integer(build_w0(ctx, zero).m) == std::vector<Int>{Int(1), Int(0)});
}

TEST_CASE("counterexample construction on Z(4)") {
    RingContext ctx(build_ring("Z(4)"));
    const Weight bad = Weight::from_element_values(ctx.ring, {Rat(0), Rat(1), Rat(0), Rat(1)});
    const CounterexamplePair pair = build_counterexample(ctx, bad, {Int(1), Int(0)});
    REQUIRE(pair.g_plus == Tuple{2, 1});
    REQUIRE(pair.g_minus == Tuple{1, 0});
    REQUIRE(pair.n == 2);

    const ExtendResult ext = is_extendable(bad, pair.n, {pair.g_plus}, {pair.g_minus});
    REQUIRE(!ext.extendable);
    REQUIRE(ext.maps_tried == 8);  // 2! * |G_rt|^2 with G_rt = {1,3}

    // non-kernel vectors are rejected
    REQUIRE_THROWS_AS(build_counterexample(ctx, bad, {Int(0), Int(1)}), SpecError);
    REQUIRE_THROWS_AS(build_counterexample(ctx, bad, {Int(0), Int(0)}), SpecError);
    // invertible W0: no null vector to feed in
    REQUIRE_THROWS_AS(build_counterexample(ctx, lee_weight(ctx.ring), {Int(1), Int(0)}),
                      SpecError);
}

TEST_CASE("counterexample construction on Mat(2,GF(2)) with 2 w2 = 3 w1") {
    RingContext ctx(build_ring("Mat(2,GF(2))"));
    const Weight w = rank_weight(ctx.ring, {Rat(2), Rat(3)});
    REQUIRE(!criterion(ctx, w).passes);
    const auto nv = null_vector_integer(build_w0(ctx, w).m);
    REQUIRE(nv.has_value());
    const CounterexamplePair pair = build_counterexample(ctx, w, *nv);
    // v = (1,1,1,-2): three line generators + trailing 1 vs two copies of a
    // unit + trailing 1, zero-padded
    REQUIRE(pair.n == 4);
    const ExtendResult ext = is_extendable(w, pair.n, {pair.g_plus}, {pair.g_minus});
    REQUIRE(!ext.extendable);
}

TEST_CASE("is_extendable finds extending monomial maps") {
    RingPtr z4 = build_ring("Z(4)");
    const Weight lee = lee_weight(z4);

    // identity on a cyclic code
    const ExtendResult id = is_extendable(lee, 2, {Tuple{1, 2}}, {Tuple{1, 2}});
    REQUIRE(id.extendable);

    // (1,2) -> (3,2) is a Lee isometry extended by units (3,1) with trivial
    // permutation
    const ExtendResult e = is_extendable(lee, 2, {Tuple{1, 2}}, {Tuple{3, 2}});
    REQUIRE(e.extendable);
    const Tuple image = e.witness->apply(*z4, Tuple{1, 2});
    REQUIRE(image == Tuple{3, 2});

    // ill-defined and non-injective maps are rejected
    REQUIRE_THROWS_AS(is_extendable(lee, 2, {Tuple{2, 0}}, {Tuple{1, 0}}), SpecError);
    REQUIRE_THROWS_AS(is_extendable(lee, 2, {Tuple{1, 0}}, {Tuple{2, 0}}), SpecError);

    // budget guard
    REQUIRE_THROWS_AS(is_extendable(lee, 2, {Tuple{1, 2}}, {Tuple{1, 2}}, 3), BudgetError);
}

TEST_CASE("submodule enumeration") {
    RingPtr f2 = build_ring("GF(2)");
    REQUIRE(all_submodules(f2, 2).size() == 5);  // 0, three lines, the plane

    RingPtr z4 = build_ring("Z(4)");
    REQUIRE(all_submodules(z4, 1).size() == 3);  // the ideals
    const auto mods = all_submodules(z4, 2);
    for (const LinearCode& c : mods) {
        REQUIRE(c.size() % 2 == (c.size() == 1 ? 1 : 0));  // |C| divides 16
        REQUIRE(16 % c.size() == 0);
        // closure under scalars and addition
        for (const Tuple& x : c.elems) {
            for (ElemIdx a = 0; a < 4; ++a) REQUIRE(c.contains(tuple_smul(*z4, a, x)));
            for (const Tuple& y : c.elems) REQUIRE(c.contains(tuple_add(*z4, x, y)));
        }
    }
}

TEST_CASE("monomial map enumeration size") {
    REQUIRE(all_monomial_maps(2, {1, 3}).size() == 8);
    REQUIRE(all_monomial_maps(3, {1}).size() == 6);
}

TEST_CASE("monomial maps are bijective isometries for G_rt units") {
    RingPtr z4 = build_ring("Z(4)");
    const Weight lee = lee_weight(z4);
    const std::vector<ElemIdx> g_rt = symmetry_groups(*z4, lee.dense()).g_rt;
    for (const MonomialMap& m : all_monomial_maps(2, g_rt)) {
        std::set<Tuple> images;
        Tuple x{0, 0};
        while (true) {
            const Tuple y = m.apply(*z4, x);
            REQUIRE(images.insert(y).second);
            REQUIRE(tuple_weight(lee, y) == tuple_weight(lee, x));
            std::size_t pos = 0;
            while (pos < 2 && ++x[pos] == 4) x[pos++] = 0;
            if (pos == 2) break;
        }
        REQUIRE(images.size() == 16);
    }
}

TEST_CASE("oracle on Z(4)") {
    RingPtr z4 = build_ring("Z(4)");

    const OracleReport lee = oracle_extension_property(lee_weight(z4), 2);
    REQUIRE(lee.completed);
    REQUIRE(lee.holds);
    REQUIRE(lee.failures == 0);
    REQUIRE(lee.codes_checked > 0);

    const Weight bad = Weight::from_element_values(z4, {Rat(0), Rat(1), Rat(0), Rat(1)});
    const OracleReport rep = oracle_extension_property(bad, 2);
    REQUIRE(rep.completed);
    REQUIRE(!rep.holds);
    REQUIRE(rep.failures == 1);
    REQUIRE(rep.witness.has_value());

    // budget exhaustion is reported, not silently truncated
    const OracleReport partial = oracle_extension_property(lee_weight(z4), 2, 50);
    REQUIRE(!partial.completed);
}

TEST_CASE("oracle on the classical field case") {
    RingPtr f2 = build_ring("GF(2)");
    const OracleReport rep = oracle_extension_property(hamming_weight(f2), 2);
    REQUIRE(rep.completed);
    REQUIRE(rep.holds);
}

TEST_CASE("enumerated isometries are isometries for every correlation weight") {
    // any w-isometry is a (w f)-isometry: check on cyclic Lee codes over Z4
    RingPtr z4 = build_ring("Z(4)");
    const Weight lee = lee_weight(z4);
    const std::vector<Rat> w = lee.dense();
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<int> num(-5, 5);

    const LinearCode code = LinearCode::span(z4, 2, {Tuple{1, 2}});
    // enumerate all injective Lee isometries g -> h by brute force
    std::vector<std::pair<Tuple, Tuple>> isometries;
    Tuple h{0, 0};
    while (true) {
        bool ok = true;
        std::set<Tuple> seen;
        for (ElemIdx a = 0; a < 4 && ok; ++a) {
            const Tuple x = tuple_smul(*z4, a, Tuple{1, 2});
            const Tuple y = tuple_smul(*z4, a, h);
            ok = tuple_weight(lee, x) == tuple_weight(lee, y) && seen.insert(y).second;
        }
        if (ok) isometries.emplace_back(Tuple{1, 2}, h);
        std::size_t pos = 0;
        while (pos < 2 && ++h[pos] == 4) h[pos++] = 0;
        if (pos == 2) break;
    }
    REQUIRE(!isometries.empty());

    for (int round = 0; round < 5; ++round) {
        std::vector<Rat> f(4);
        for (auto& x : f) x = Rat(num(rng));
        const std::vector<Rat> wf = correlate(*z4, w, f);
        auto wf_tuple = [&](const Tuple& t) {
            Rat s(0);
            for (ElemIdx x : t) s += wf[x];
            return s;
        };
        for (const auto& [g, img] : isometries)
            for (ElemIdx a = 0; a < 4; ++a)
                REQUIRE(wf_tuple(tuple_smul(*z4, a, g)) == wf_tuple(tuple_smul(*z4, a, img)));
    }
}

TEST_CASE("criterion and oracle agree on a small battery") {
    std::mt19937_64 rng(71);
    for (const char* s : {"Z(4)", "Z(6)", "GF(4)", "PChain(2,2)"}) {
        RingContext ctx(build_ring(s));
        std::vector<Weight> battery = {hamming_weight(ctx.ring), homogeneous_weight(ctx),
                                       zero_on_socle_weight(ctx, rng),
                                       random_nonsingular_weight(ctx, rng)};
        for (const Weight& w : battery) {
            const bool expect = criterion(ctx, w).passes;
            const OracleReport rep = oracle_extension_property(w, 2);
            REQUIRE(rep.completed);
            INFO(s);
            REQUIRE(rep.holds == expect);
        }
    }
}
