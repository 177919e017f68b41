#include "whitehouse/hilbert.hpp"

#include <sstream>
#include <stdexcept>

#include "whitehouse/whitehouse.hpp"

namespace whitehouse {

HilbertSeries hilbert_series_of(const SimplicialComplex& k) {
    const int d = k.dimension() + 1;
    return HilbertSeries{h_vector_of(f_vector(k), d).entries, d};
}

HilbertSeries hilbert_series(int n) {
    HilbertSeries s = hilbert_series_of(build_direct(n).complex);
    if (s.d != n - 3) throw std::logic_error("Delta_n has unexpected dimension");
    return s;
}

std::vector<Coefficient> expand(const HilbertSeries& s, std::size_t terms) {
    if (terms < 1) throw std::invalid_argument("expansion needs at least one term");
    std::vector<Coefficient> c(terms);
    for (std::size_t k = 0; k < terms && k < s.numerator.size(); ++k) c[k] = s.numerator[k];
    // each factor 1/(1-t) is a running sum
    for (int pass = 0; pass < s.d; ++pass) {
        for (std::size_t k = 1; k < terms; ++k) c[k] += c[k - 1];
    }
    return c;
}

std::vector<Coefficient> reciprocal(const HilbertSeries& s, std::size_t terms) {
    if (terms < 1) throw std::invalid_argument("expansion needs at least one term");
    if (s.numerator.empty() || s.numerator[0] != 1) {
        throw std::invalid_argument("numerator must have constant term 1 to be inverted");
    }
    const std::size_t deg = s.numerator.size() - 1;
    // remainder starts as (1 - t)^d
    std::vector<Coefficient> rem(terms + deg);
    for (int k = 0; k <= s.d && static_cast<std::size_t>(k) < rem.size(); ++k) {
        rem[k] = binomial(s.d, k) * ((k % 2 == 0) ? 1 : -1);
    }
    std::vector<Coefficient> quotient(terms);
    for (std::size_t k = 0; k < terms; ++k) {
        quotient[k] = rem[k];
        if (quotient[k] == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) rem[k + j] -= quotient[k] * s.numerator[j];
    }
    return quotient;
}

KoszulEvidence koszul_evidence(const HilbertSeries& s, std::size_t terms) {
    KoszulEvidence ev;
    ev.coefficients = reciprocal(s, terms);
    for (std::size_t k = 0; k < terms; ++k) {
        const auto& c = ev.coefficients[k];
        if (c == 0) continue;
        if ((k % 2 == 0) != (c > 0)) ev.alternating = false;
    }
    return ev;
}

KoszulEvidence koszul_evidence(int n, std::size_t terms) {
    return koszul_evidence(hilbert_series(n), terms);
}

const std::vector<std::vector<std::int64_t>>& table1_rows() {
    static const std::vector<std::vector<std::int64_t>> rows = {
        {1},
        {1, 2},
        {1, 8, 6},
        {1, 22, 58, 24},
        {1, 52, 328, 444, 120},
        {1, 114, 1452, 4400, 3708, 720},
    };
    return rows;
}

std::vector<Table1Row> verify_table1() {
    std::vector<Table1Row> out;
    const auto& rows = table1_rows();
    for (int n = 3; n <= 8; ++n) out.push_back({n, rows[n - 3], hilbert_series(n).numerator});
    return out;
}

std::string polynomial_plain(const std::vector<std::int64_t>& coeffs) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        std::int64_t c = coeffs[k];
        if (c == 0) continue;
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << '-';
        const std::int64_t a = c < 0 ? -c : c;
        if (k == 0 || a != 1) out << a;
        if (k >= 1) out << 't';
        if (k >= 2) out << '^' << k;
        first = false;
    }
    if (first) out << '0';
    return out.str();
}

std::string series_plain(const HilbertSeries& s) {
    std::size_t terms = 0;
    for (auto c : s.numerator) terms += c != 0;
    const std::string p = polynomial_plain(s.numerator);
    return (terms > 1 ? "(" + p + ")" : p) + " / (1-t)^" + std::to_string(s.d);
}

nlohmann::json series_to_json(const HilbertSeries& s) {
    return nlohmann::json{{"numerator", s.numerator}, {"d", s.d}};
}

}  // namespace whitehouse
