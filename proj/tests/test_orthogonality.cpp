#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ringext;
using namespace testing_support;

namespace {

RatMat mat2(std::initializer_list<std::initializer_list<int>> rows) {
    RatMat m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (int v : row) m.at(i, j++) = Rat(v);
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("Z(4) orthogonality matrices for Lee and Hamming") {
    RingContext ctx(build_ring("Z(4)"));
    const OrthMatrix lee = build_w0(ctx, lee_weight(ctx.ring));
    REQUIRE(lee.m == mat2({{0, 2}, {2, 1}}));  // ordering 2R < R
    REQUIRE(ctx.ideal_label(Side::right, lee.col_ids[0]) == "2R");
    REQUIRE(ctx.ideal_label(Side::right, lee.col_ids[1]) == "R");

    const OrthMatrix ham = build_w0(ctx, hamming_weight(ctx.ring));
    REQUIRE(ham.m == mat2({{0, 1}, {1, 1}}));

    REQUIRE(lee.m.det() == -4);
    REQUIRE(ham.m.det() == -1);
}

TEST_CASE("diagonal factors on Z(4)") {
    RingContext ctx(build_ring("Z(4)"));
    const DiagonalFactors df = diagonal_factors(ctx, lee_weight(ctx.ring));
    REQUIRE(df.restricted == std::vector<Rat>{Rat(-2), Rat(-2)});
    const Rat det = build_w0(ctx, lee_weight(ctx.ring)).m.det();
    const Rat prod = df.restricted[0] * df.restricted[1];
    REQUIRE((det == prod || det == -prod));
}

TEST_CASE("criterion on Z(4)") {
    RingContext ctx(build_ring("Z(4)"));
    const CriterionVerdict lee = criterion(ctx, lee_weight(ctx.ring));
    REQUIRE(lee.passes);
    REQUIRE(lee.route == "mobius_factors");
    REQUIRE(*lee.det_w0 == -4);

    // w(2) = 0 fails
    const Weight bad = Weight::from_element_values(ctx.ring, {Rat(0), Rat(1), Rat(0), Rat(1)});
    const CriterionVerdict v = criterion(ctx, bad);
    REQUIRE(!v.passes);
    REQUIRE(*v.det_w0 == 0);

    // w(0) != 0 is rejected
    REQUIRE_THROWS_AS(criterion(ctx, lee_weight(ctx.ring).with_w0(Rat(1))), SpecError);
}

TEST_CASE("socle reduction decides exactly like the full factor check") {
    std::mt19937_64 rng(31);
    for (const char* s : {"Z(12)", "Z(16)", "Mat(2,GF(2))", "Prod(Z(4),GF(2))",
                          "Mat(2,ZChain(2,2))"}) {
        RingContext ctx(build_ring(s));
        for (int round = 0; round < 10; ++round) {
            const Weight w = random_weight(ctx.ring, rng);
            REQUIRE(criterion(ctx, w, true).passes == criterion(ctx, w, false).passes);
        }
        const Weight z = zero_on_socle_weight(ctx, rng);
        REQUIRE(criterion(ctx, z, true).passes == criterion(ctx, z, false).passes);
        REQUIRE(!criterion(ctx, z).passes);
    }
}

TEST_CASE("criterion verdict agrees with W0 invertibility") {
    std::mt19937_64 rng(37);
    for (const char* s : {"Z(6)", "Z(8)", "Z(12)", "Mat(2,GF(2))", "Prod(Z(4),GF(2))"}) {
        RingContext ctx(build_ring(s));
        for (int round = 0; round < 20; ++round) {
            const Weight w = random_weight(ctx.ring, rng);
            const CriterionVerdict v = criterion(ctx, w);
            REQUIRE(v.passes == (*v.det_w0 != 0));
            REQUIRE((v.det_w0 && v.det_factorized));
            const Rat d = *v.det_w0, f = *v.det_factorized;
            REQUIRE((d == f || d == -f));
        }
    }
}

TEST_CASE("matrix ring factors match the q-nomial sums") {
    // factor at a rank-s ideal: sum_{i=1..s} (-1)^i q^(i(i-1)/2) [s i]_q w([i])
    std::mt19937_64 rng(41);
    struct Case { const char* spec; long long q; int n; };
    for (const Case c : {Case{"Mat(2,GF(2))", 2, 2}, Case{"Mat(2,GF(3))", 3, 2},
                         Case{"Mat(3,GF(2))", 2, 3}}) {
        RingContext ctx(build_ring(c.spec));
        std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
        for (int round = 0; round < 10; ++round) {
            std::vector<Rat> wr(c.n);
            for (auto& v : wr) v = make_rat(num(rng), den(rng));
            const Weight w = rank_weight(ctx.ring, wr);
            const DiagonalFactors df = diagonal_factors(ctx, w);
            for (std::size_t k = 0; k < df.right_ids.size(); ++k) {
                // rank s of the ideal from its cardinality q^(n s)
                int s = 0;
                std::size_t card = ctx.right->ideals[df.right_ids[k]].card;
                std::size_t qn = 1;
                for (int t = 0; t < c.n; ++t) qn *= c.q;
                while (card > 1) {
                    card /= qn;
                    ++s;
                }
                Rat expect(0);
                for (int i = 1; i <= s; ++i) {
                    Int qpow = 1;
                    for (int t = 0; t < i * (i - 1) / 2; ++t) qpow *= c.q;
                    const Rat term = Rat(qpow) * q_nomial(c.q, s, i) * wr[i - 1];
                    expect += (i % 2 == 1) ? -term : term;
                }
                REQUIRE(df.restricted[k] == expect);
            }
        }
    }
}

TEST_CASE("Mat(2,GF(q)) criterion in closed form") {
    std::mt19937_64 rng(43);
    for (long long q : {2, 3}) {
        RingContext ctx(build_ring("Mat(2,GF(" + std::to_string(q) + "))"));
        std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
        for (int round = 0; round < 25; ++round) {
            const Rat w1 = make_rat(num(rng), den(rng));
            const Rat w2 = make_rat(num(rng), den(rng));
            const bool expect = w1 != 0 && Rat(q) * w2 != Rat(q + 1) * w1;
            REQUIRE(criterion(ctx, rank_weight(ctx.ring, {w1, w2})).passes == expect);
        }
    }
}

TEST_CASE("Q is unimodular on PIRs and singular for the Klein ring") {
    for (const char* s : {"Z(12)", "Mat(2,GF(2))", "Prod(Z(4),GF(2))"}) {
        RingContext ctx(build_ring(s));
        const Rat d = build_q(ctx).m.det();
        REQUIRE((d == 1 || d == -1));
    }
    RingContext klein(klein4_ring());
    const OrthMatrix q = build_q(klein);
    REQUIRE(q.m.rows() == 6);
    REQUIRE(q.m.cols() == 6);
    REQUIRE(q.m.det() == 0);
}

TEST_CASE("triangular structure on PIR test rings with random weights") {
    std::mt19937_64 rng(47);
    for (const char* s : {"Z(8)", "Z(12)", "GF(9)", "Mat(2,GF(2))", "Mat(2,ZChain(2,2))",
                          "Prod(Mat(2,GF(2)),Z(9))"}) {
        RingContext ctx(build_ring(s));
        for (int round = 0; round < 3; ++round) {
            const Weight w = random_weight(ctx.ring, rng);
            for (const Rat& w0 : {Rat(0), Rat(1), make_rat(7, 3)}) {
                const TriangularityReport rep = triangularity(ctx, w, w0);
                INFO(s);
                REQUIRE(rep.all());
            }
        }
    }
    RingContext klein(klein4_ring());
    REQUIRE_THROWS_AS(triangularity(klein, hamming_weight(klein.ring)), SpecError);
}

TEST_CASE("diagonal factor is independent of the generator choice") {
    std::mt19937_64 rng(53);
    for (const char* s : {"Z(12)", "Mat(2,GF(2))"}) {
        RingContext ctx(build_ring(s));
        const FiniteRing& r = *ctx.ring;
        const Weight w = random_weight(ctx.ring, rng);
        const DiagonalFactors df = diagonal_factors(ctx, w);
        const IdealLattice& rlat = *ctx.right;
        for (const Ideal& left_ideal : ctx.left->ideals) {
            if (!left_ideal.principal) continue;
            Rat first;
            bool have_first = false;
            for (ElemIdx a : left_ideal.generators) {
                // factor of aR computed for this particular generator
                ElemSet ar(r.order());
                for (ElemIdx t = 0; t < r.order(); ++t) ar.set(r.mul(a, t));
                const int id = rlat.id_of(ar);
                Rat val(0);
                if (id != rlat.zero_id) {
                    const auto it = std::find(df.right_ids.begin(), df.right_ids.end(), id);
                    REQUIRE(it != df.right_ids.end());
                    val = df.restricted[it - df.right_ids.begin()];
                }
                if (!have_first) {
                    first = val;
                    have_first = true;
                } else {
                    REQUIRE(val == first);
                }
            }
        }
    }
}

TEST_CASE("extended matrix W is singular at w0 = 0 and det-poly checks hold") {
    std::mt19937_64 rng(59);
    for (const char* s : {"Z(6)", "Z(12)", "Mat(2,GF(3))", "Prod(Z(4),GF(2))"}) {
        RingContext ctx(build_ring(s));
        for (int round = 0; round < 3; ++round) {
            const Weight w = random_weight(ctx.ring, rng);
            REQUIRE(build_w(ctx, w, Rat(0)).m.det() == 0);
            const DetPolyReport rep = det_poly_in_w0(ctx, w);
            REQUIRE(rep.divisible_by_w0);
            REQUIRE(rep.quotient_at_zero_matches_det_w0);
        }
    }
}

TEST_CASE("Klein ring determinant formula det W0 = +-2 w(xy)^5") {
    RingContext ctx(klein4_ring());
    const ElemIdx xy = *ctx.ring->element_by_label("xy");
    std::mt19937_64 rng(61);
    std::optional<Rat> ratio;
    for (int round = 0; round < 20; ++round) {
        Weight w = random_weight(ctx.ring, rng);
        if (round % 5 == 4) {
            // force w(xy) = 0 occasionally
            const OrbitPartition& orb = ctx.ring->orbits(OrbitKind::two_sided);
            std::vector<Rat> vals(orb.size());
            for (std::size_t c = 0; c < orb.size(); ++c) vals[c] = w.at(orb.rep(c));
            vals[orb.class_of[xy]] = 0;
            w = Weight::from_class_values(ctx.ring, vals);
        }
        const Rat det = build_w0(ctx, w).m.det();
        const Rat wxy = w.at(xy);
        if (wxy == 0) {
            REQUIRE(det == 0);
        } else {
            REQUIRE(det != 0);
            const Rat r = det / (wxy * wxy * wxy * wxy * wxy);
            REQUIRE((r == 2 || r == -2));
            if (!ratio) ratio = r;
            REQUIRE(*ratio == r);  // one constant across all samples
        }
    }
}

TEST_CASE("criterion is refused on non-PIR rings and falls back to det W0") {
    RingContext ctx(klein4_ring());
    const CriterionVerdict v = criterion(ctx, hamming_weight(ctx.ring));
    REQUIRE(!v.is_pir);
    REQUIRE(v.is_frobenius);
    REQUIRE(v.route == "det_w0");
    REQUIRE(v.factors.empty());
    REQUIRE(v.det_w0.has_value());
    REQUIRE(v.passes);  // Hamming passes on every Frobenius ring
    REQUIRE_THROWS_AS(diagonal_factors(ctx, hamming_weight(ctx.ring)), SpecError);
}

TEST_CASE("build_matrix dispatch and weight requirement") {
    RingContext ctx(build_ring("Z(4)"));
    REQUIRE_THROWS_AS(build_matrix(ctx, OmKind::W0, nullptr), SpecError);
    const OrthMatrix t = build_matrix(ctx, OmKind::T, nullptr);
    REQUIRE(t.m.rows() == 3);
}
