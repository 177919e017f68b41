#ifndef WHITEHOUSE_HILBERT_HPP
#define WHITEHOUSE_HILBERT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "whitehouse/complex.hpp"

namespace whitehouse {

using Coefficient = boost::multiprecision::cpp_int;

// numerator(t) / (1 - t)^d
struct HilbertSeries {
    std::vector<std::int64_t> numerator;
    int d = 0;

    friend bool operator==(const HilbertSeries&, const HilbertSeries&) = default;
};

// Numerator is the h-vector of Delta_n, d = n - 3 (enumerates Delta_n).
HilbertSeries hilbert_series(int n);
HilbertSeries hilbert_series_of(const SimplicialComplex& k);

// First `terms` coefficients of the power series.
std::vector<Coefficient> expand(const HilbertSeries& s, std::size_t terms);

// (1 - t)^d / numerator(t) by long division; needs numerator[0] == 1.
std::vector<Coefficient> reciprocal(const HilbertSeries& s, std::size_t terms);

struct KoszulEvidence {
    bool alternating = true;
    std::vector<Coefficient> coefficients;
};

// sign(c_k) is (-1)^k or c_k is zero, for all k < terms.
KoszulEvidence koszul_evidence(const HilbertSeries& s, std::size_t terms);
KoszulEvidence koszul_evidence(int n, std::size_t terms);

// Numerators of the pre-WDVV Hilbert series for n = 3..8 as published.
const std::vector<std::vector<std::int64_t>>& table1_rows();

struct Table1Row {
    int n = 3;
    std::vector<std::int64_t> expected;
    std::vector<std::int64_t> computed;
    bool match() const { return expected == computed; }
};

std::vector<Table1Row> verify_table1();

std::string series_plain(const HilbertSeries& s);  // "(1 + 2t) / (1-t)^1"
std::string polynomial_plain(const std::vector<std::int64_t>& coeffs);
nlohmann::json series_to_json(const HilbertSeries& s);

}  // namespace whitehouse

#endif  // WHITEHOUSE_HILBERT_HPP
