#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ringext;
using namespace testing_support;

TEST_CASE("Z(4) basics") {
    RingPtr r = build_ring("Z(4)");
    REQUIRE(r->order() == 4);
    REQUIRE(r->units() == std::vector<ElemIdx>{1, 3});
    REQUIRE(r->mul(2, 2) == 0);
    REQUIRE(r->label(3) == "3");
    REQUIRE(r->spec_string() == "Z(4)");
}

TEST_CASE("element arithmetic wrappers") {
    RingPtr z4 = build_ring("Z(4)");
    RingPtr prod = build_ring("Prod(Z(4),GF(2))");

    const RingElement a{prod, *prod->element_by_label("(3,1)")};
    const RingElement b{prod, *prod->element_by_label("(1,1)")};
    REQUIRE(prod->label(add(a, b).index) == "(0,0)");

    RingPtr m2 = build_ring("Mat(2,GF(2))");
    const RingElement u{m2, *m2->element_by_label("[[1,1],[0,1]]")};
    REQUIRE(mul(u, u).index == m2->one());

    const RingElement z{z4, 1};
    REQUIRE_THROWS_AS(add(z, a), SpecError);
}

TEST_CASE("units of Mat(2,GF(2)) against exhaustive inverse scan") {
    RingPtr r = build_ring("Mat(2,GF(2))");
    REQUIRE(r->order() == 16);
    REQUIRE(r->units().size() == brute_force_unit_count(*r));
    REQUIRE(r->units().size() == 6);  // |GL_2(F_2)|
    for (ElemIdx u : r->units()) {
        const ElemIdx v = r->inverse(u);
        REQUIRE(r->mul(u, v) == r->one());
        REQUIRE(r->mul(v, u) == r->one());
    }
}

TEST_CASE("unit group closure under product and inverse") {
    for (const char* s : {"Z(12)", "Mat(2,GF(3))", "PChain(3,2)"}) {
        RingPtr r = build_ring(s);
        for (ElemIdx u : r->units()) {
            REQUIRE(r->is_unit(r->inverse(u)));
            for (ElemIdx v : r->units()) REQUIRE(r->is_unit(r->mul(u, v)));
        }
    }
}

TEST_CASE("orbit partitions") {
    RingPtr z4 = build_ring("Z(4)");
    const OrbitPartition& left = z4->orbits(OrbitKind::left);
    REQUIRE(left.classes == std::vector<std::vector<ElemIdx>>{{0}, {1, 3}, {2}});
    REQUIRE(z4->orbits(OrbitKind::two_sided).classes == left.classes);  // commutative

    RingPtr m2 = build_ring("Mat(2,GF(2))");
    // zero + full + one class per line of F_2^2
    const std::size_t lines = count_subspaces(2, 2, 1);
    REQUIRE(lines == 3);
    REQUIRE(m2->orbits(OrbitKind::left).size() == 2 + lines);
    REQUIRE(m2->orbits(OrbitKind::right).size() == 2 + lines);
    // two-sided orbits of a matrix ring over a field are the rank classes
    REQUIRE(m2->orbits(OrbitKind::two_sided).size() == 3);
}

TEST_CASE("orbit invariants across sample rings") {
    for (const char* s : {"Z(9)", "GF(8)", "Mat(2,GF(2))", "Prod(Z(4),GF(2))", "ZChain(2,3)"}) {
        RingPtr r = build_ring(s);
        const auto& left = r->orbits(OrbitKind::left);
        const auto& right = r->orbits(OrbitKind::right);
        const auto& both = r->orbits(OrbitKind::two_sided);
        // Frobenius test rings: equally many left and right orbits
        REQUIRE(left.size() == right.size());
        // zero is a singleton class
        REQUIRE(left.classes[left.class_of[r->zero()]] == std::vector<ElemIdx>{r->zero()});
        // classes partition the element set
        std::size_t total = 0;
        for (const auto& c : left.classes) total += c.size();
        REQUIRE(total == r->order());
        // two-sided classes are unions of left classes and of right classes
        for (ElemIdx x = 0; x < r->order(); ++x) {
            for (ElemIdx y : left.classes[left.class_of[x]])
                REQUIRE(both.class_of[y] == both.class_of[x]);
            for (ElemIdx y : right.classes[right.class_of[x]])
                REQUIRE(both.class_of[y] == both.class_of[x]);
        }
    }
}

TEST_CASE("structural constructors satisfy the ring axioms exhaustively") {
    for (const char* s : {"Z(6)", "GF(8)", "GF(9)", "PChain(2,2)", "Mat(2,GF(2))",
                          "Prod(Z(4),GF(2))", "ZChain(2,2)"}) {
        RingPtr r = build_ring(s);
        TableData t;
        t.order = r->order();
        for (ElemIdx i = 0; i < r->order(); ++i)
            for (ElemIdx j = 0; j < r->order(); ++j) {
                t.add.push_back(r->add(i, j));
                t.mul.push_back(r->mul(i, j));
            }
        const ValidationReport rep = validate_table_ring(t);
        INFO(s);
        CAPTURE(rep.violations);
        REQUIRE(rep.valid());
        REQUIRE(*rep.zero == r->zero());
        REQUIRE(*rep.one == r->one());
    }
}

TEST_CASE("table validation reports violations with witnesses") {
    RingPtr z4 = build_ring("Z(4)");
    TableData t;
    t.order = 4;
    for (ElemIdx i = 0; i < 4; ++i)
        for (ElemIdx j = 0; j < 4; ++j) {
            t.add.push_back(z4->add(i, j));
            t.mul.push_back(z4->mul(i, j));
        }
    REQUIRE(validate_table_ring(t).valid());

    TableData bad = t;
    bad.mul[2 * 4 + 2] = 1;  // tamper mul(2,2)
    const ValidationReport rep = validate_table_ring(bad);
    REQUIRE(!rep.valid());
    bool has_structural_witness = false;
    for (const auto& v : rep.violations)
        has_structural_witness = has_structural_witness ||
                                 v.find("distributivity") != std::string::npos ||
                                 v.find("associative") != std::string::npos;
    REQUIRE(has_structural_witness);
}

TEST_CASE("Klein four group algebra table ring") {
    const TableData t = klein4_table();
    REQUIRE(validate_table_ring(t).valid());

    // the committed fixture is exactly this table
    std::ifstream in(data_path("klein4_group_algebra.json"));
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    REQUIRE(j == table_to_json(t));

    RingPtr r = klein4_ring();
    REQUIRE(r->order() == 16);
    REQUIRE(r->units().size() == 8);
    REQUIRE(r->units().size() == brute_force_unit_count(*r));
    REQUIRE(r->label(*r->element_by_label("x+1")) == "x+1");

    // the ring is local: the non-units form a two-sided ideal
    for (ElemIdx a = 0; a < 16; ++a) {
        if (r->is_unit(a)) continue;
        for (ElemIdx b = 0; b < 16; ++b) {
            if (!r->is_unit(b)) REQUIRE(!r->is_unit(r->add(a, b)));
            REQUIRE(!r->is_unit(r->mul(a, b)));
            REQUIRE(!r->is_unit(r->mul(b, a)));
        }
    }
}

TEST_CASE("ring spec parsing and errors") {
    REQUIRE(parse_ring_spec(" Mat( 2 , GF(3) ) ").to_string() == "Mat(2,GF(3))");
    REQUIRE(parse_ring_spec("Prod(Z(4),GF(2),Z(9))").args.size() == 3);
    REQUIRE_THROWS_AS(build_ring("GF(6)"), SpecError);
    REQUIRE_THROWS_AS(build_ring("ZChain(4,2)"), SpecError);
    REQUIRE_THROWS_AS(build_ring("Z(1)"), SpecError);
    REQUIRE_THROWS_AS(build_ring("Frob(3)"), SpecError);
    REQUIRE_THROWS_AS(build_ring("Z(4"), SpecError);
    REQUIRE_THROWS_AS(build_ring("Z(5000)"), SpecError);  // default order cap
    BuildLimits lim;
    lim.max_order = 5000;
    REQUIRE(build_ring("Z(5000)", lim)->order() == 5000);
    REQUIRE_THROWS_AS(build_ring("Mat(2,Z(6))", lim), SpecError);  // base not a chain ring
    REQUIRE_THROWS_AS(build_ring("Table(/nonexistent/nope.json)"), SpecError);
}

TEST_CASE("table files violating the ring axioms are refused") {
    TableData bad = klein4_table();
    bad.mul[3 * 16 + 3] = 5;  // break associativity/distributivity somewhere
    const std::string path = "/tmp/ringext_bad_table.json";
    {
        std::ofstream f(path);
        f << table_to_json(bad).dump();
    }
    REQUIRE_THROWS_WITH(build_ring("Table(" + path + ")"),
                        Catch::Matchers::ContainsSubstring("fails ring axioms"));
}

TEST_CASE("chain ring constructors") {
    RingPtr z8 = build_ring("ZChain(2,3)");
    REQUIRE(z8->order() == 8);
    REQUIRE(z8->units().size() == 4);

    RingPtr p4 = build_ring("PChain(2,2)");
    REQUIRE(p4->order() == 4);
    REQUIRE(p4->units().size() == 2);
    const ElemIdx t = *p4->element_by_label("t");
    REQUIRE(p4->mul(t, t) == p4->zero());

    // PChain over a non-prime base field
    RingPtr p16 = build_ring("PChain(4,2)");
    REQUIRE(p16->order() == 16);
    REQUIRE(p16->units().size() == 12);
}
