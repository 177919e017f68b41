#include <doctest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "whitehouse/hilbert.hpp"

using namespace whitehouse;

namespace {

std::vector<Coefficient> coeffs(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_SUITE_BEGIN("hilbert");

TEST_CASE("series of small rings") {
    CHECK(hilbert_series(3) == HilbertSeries{{1}, 0});
    CHECK(hilbert_series(5) == HilbertSeries{{1, 8, 6}, 2});
    CHECK(hilbert_series(7) == HilbertSeries{{1, 52, 328, 444, 120}, 4});
    CHECK(series_plain(hilbert_series(3)) == "1 / (1-t)^0");
    CHECK(series_plain(hilbert_series(4)) == "(1 + 2t) / (1-t)^1");
    CHECK(series_to_json(hilbert_series(5)).dump() == R"({"d":2,"numerator":[1,8,6]})");
}

TEST_CASE("polynomial printing") {
    CHECK(polynomial_plain({1, 22, 58, 24}) == "1 + 22t + 58t^2 + 24t^3");
    CHECK(polynomial_plain({1, -1, 0, 1}) == "1 - t + t^3");
    CHECK(polynomial_plain({0, -2}) == "-2t");
    CHECK(polynomial_plain({}) == "0");
}

TEST_CASE("expansion") {
    CHECK(expand(hilbert_series(4), 4) == coeffs({1, 3, 3, 3}));
    CHECK(expand(hilbert_series(3), 5) == coeffs({1, 0, 0, 0, 0}));
    CHECK(expand(HilbertSeries{{1}, 2}, 4) == coeffs({1, 2, 3, 4}));
    CHECK(expand(HilbertSeries{{1, 2, 3}, 0}, 2) == coeffs({1, 2}));
    CHECK_THROWS_AS(expand(hilbert_series(4), 0), std::invalid_argument);
    for (int n = 4; n <= 9; ++n) {
        CHECK(expand(hilbert_series(n), 2)[1] == f_vector(build_direct(n).complex).at(0));
    }
}

TEST_CASE("expansion counts face monomials") {
    for (int n = 3; n <= 5; ++n) {
        const auto c = expand(hilbert_series(n), 5);
        for (int k = 0; k <= 4; ++k) CHECK(c[k] == oracle::count_monomials(n, k));
    }
}

TEST_CASE("numerator identities") {
    for (int n = 3; n <= 9; ++n) {
        const HilbertSeries s = hilbert_series(n);
        std::int64_t sum = 0;
        for (auto h : s.numerator) {
            CHECK(h >= 0);
            sum += h;
        }
        CHECK(s.numerator.front() == 1);
        CHECK(sum == double_factorial(2 * n - 5));
        CHECK(s.numerator.back() == factorial(n - 2));
    }
}

TEST_CASE("reciprocal series") {
    CHECK(reciprocal(hilbert_series(4), 4) == coeffs({1, -3, 6, -12}));
    CHECK(reciprocal(hilbert_series(3), 3) == coeffs({1, 0, 0}));
    CHECK_THROWS_AS(reciprocal(HilbertSeries{{2, 1}, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(reciprocal(HilbertSeries{{}, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(reciprocal(hilbert_series(4), 0), std::invalid_argument);

    SUBCASE("product with the series is one") {
        for (int n = 3; n <= 8; ++n) {
            const HilbertSeries s = hilbert_series(n);
            const auto a = expand(s, 12), b = reciprocal(s, 12);
            for (std::size_t k = 0; k < 12; ++k) {
                Coefficient c = 0;
                for (std::size_t i = 0; i <= k; ++i) c += a[i] * b[k - i];
                CHECK(c == (k == 0 ? 1 : 0));
            }
        }
    }
}

TEST_CASE("Koszul sign pattern") {
    for (int n = 3; n <= 8; ++n) {
        const KoszulEvidence ev = koszul_evidence(n, 20);
        CHECK(ev.alternating);
        CHECK(ev.coefficients.size() == 20);
    }
    // 1 / (1 + t + t^2) = 1 - t + t^3 - t^4 + ...
    const KoszulEvidence bad = koszul_evidence(HilbertSeries{{1, 1, 1}, 0}, 6);
    CHECK_FALSE(bad.alternating);
    CHECK(bad.coefficients == coeffs({1, -1, 0, 1, -1, 0}));
}

TEST_CASE("table 1") {
    const auto rows = verify_table1();
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) CHECK(row.match());
    CHECK(rows[3].computed == std::vector<std::int64_t>{1, 22, 58, 24});
    CHECK(rows[5].computed == std::vector<std::int64_t>{1, 114, 1452, 4400, 3708, 720});
}

TEST_SUITE_END();
