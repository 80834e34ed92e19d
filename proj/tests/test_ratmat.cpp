#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ringext;

namespace {

// independent determinant oracle: cofactor expansion
Rat det_cofactor(const RatMat& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
    if (rows.empty()) return Rat(1);
    Rat sum(0);
    int sign = 1;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const Rat& a = m.at(rows[0], cols[k]);
        if (a != 0) {
            std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
            std::vector<std::size_t> sub_cols;
            for (std::size_t t = 0; t < cols.size(); ++t)
                if (t != k) sub_cols.push_back(cols[t]);
            sum += Rat(sign) * a * det_cofactor(m, sub_rows, sub_cols);
        }
        sign = -sign;
    }
    return sum;
}

Rat det_cofactor(const RatMat& m) {
    std::vector<std::size_t> idx(m.rows());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return det_cofactor(m, idx, idx);
}

RatMat random_matrix(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = make_rat(num(rng), den(rng));
    return m;
}

}  // namespace

TEST_CASE("bareiss determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 1 + round % 5;
        const RatMat m = random_matrix(rng, n);
        REQUIRE(m.det() == det_cofactor(m));
    }
}

TEST_CASE("determinant of singular and structured matrices") {
    RatMat m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = Rat(i + j);
    REQUIRE(m.det() == 0);
    REQUIRE(RatMat::identity(4).det() == 1);
    RatMat lee(2, 2);
    lee.at(0, 0) = 0;
    lee.at(0, 1) = 2;
    lee.at(1, 0) = 2;
    lee.at(1, 1) = 1;
    REQUIRE(lee.det() == -4);
}

TEST_CASE("kernel basis vectors lie in the kernel") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 40; ++round) {
        RatMat m = random_matrix(rng, 4);
        // force rank deficiency: last row = sum of the first two
        for (std::size_t j = 0; j < 4; ++j) m.at(3, j) = m.at(0, j) + m.at(1, j);
        const auto basis = m.kernel_basis();
        REQUIRE(!basis.empty());
        for (const auto& v : basis)
            for (const Rat& e : m * v) REQUIRE(e == 0);
    }
}

TEST_CASE("kernel of the zero matrix starts with the first standard basis vector") {
    RatMat z(3, 3);
    const auto basis = z.kernel_basis();
    REQUIRE(basis.size() == 3);
    REQUIRE(basis[0] == std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
}

TEST_CASE("primitive integer vector scaling") {
    const auto v = primitive_integer_vector({make_rat(-2, 3), make_rat(4, 9), Rat(0)});
    REQUIRE(v == std::vector<Int>{Int(3), Int(-2), Int(0)});  // sign: first nonzero positive
    REQUIRE(primitive_integer_vector({Rat(0), Rat(0)}) == std::vector<Int>{Int(0), Int(0)});
}

TEST_CASE("lagrange interpolation recovers polynomials exactly") {
    // p(x) = 3 - x/2 + 5 x^3
    const std::vector<Rat> coeffs{Rat(3), make_rat(-1, 2), Rat(0), Rat(5)};
    std::vector<std::pair<Rat, Rat>> pts;
    for (int j = 0; j <= 4; ++j) pts.emplace_back(Rat(j), poly_eval(coeffs, Rat(j)));
    const auto rec = lagrange_interpolate(pts);
    REQUIRE(rec == coeffs);
}

TEST_CASE("rational string round trip") {
    REQUIRE(rat_to_string(make_rat(-4, 6)) == "-2/3");
    REQUIRE(rat_to_string(Rat(7)) == "7");
    REQUIRE(rat_from_string(" -2/3 ") == make_rat(-2, 3));
    REQUIRE(rat_from_string("42") == Rat(42));
    REQUIRE_THROWS_AS(rat_from_string("1/0"), SpecError);
    REQUIRE_THROWS_AS(rat_from_string("x"), SpecError);
}
