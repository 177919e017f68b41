#ifndef WHITEHOUSE_HOMOLOGY_HPP
#define WHITEHOUSE_HOMOLOGY_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "whitehouse/complex.hpp"
#include "whitehouse/whitehouse.hpp"

namespace whitehouse {

using BigInt = boost::multiprecision::cpp_int;

// Column-major sparse integer matrix; each column holds (row, value) with
// strictly increasing rows and no zero values.
struct SparseMatrix {
    using Entry = std::pair<std::uint32_t, std::int64_t>;

    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<Entry>> columns;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }
    std::int64_t at(std::size_t r, std::size_t c) const;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

// Triplet text: "rows cols nnz" header, then one "row col value" line per entry.
void write_triplets(std::ostream& out, const SparseMatrix& m);
SparseMatrix read_triplets(std::istream& in);

// d[k] maps k-chains to (k-1)-chains for k = 0..dim; d[0] is the
// augmentation onto the empty face. Signs alternate along sorted vertices.
struct ChainBoundary {
    std::vector<SparseMatrix> d;
};

ChainBoundary boundary_matrices(const SimplicialComplex& k);

inline constexpr std::uint32_t kPrimeA = 32003;
inline constexpr std::uint32_t kPrimeB = 32009;

std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p);
// Ranks of d[0..dim] over Z/p, reducing from the top down with clearing.
std::vector<std::size_t> boundary_ranks_mod_p(const ChainBoundary& c, std::uint32_t p);

// Nonzero invariant factors (positive, each dividing the next).
std::vector<BigInt> smith_diagonal(const SparseMatrix& m);
std::vector<BigInt> smith_diagonal_dense(std::vector<std::vector<BigInt>> a);

enum class Ring { Field, Integer };

struct BettiProfile {
    Ring ring = Ring::Field;
    std::map<int, std::int64_t> betti;                // reduced, dimensions -1..dim
    std::map<int, std::vector<std::int64_t>> torsion;  // integer mode only

    std::int64_t at(int dim) const;
    std::map<int, std::int64_t> nonzero() const;
    bool torsion_free() const;
    std::int64_t euler() const;  // sum (-1)^i beta_i
};

// Field mode requires agreement at kPrimeA and kPrimeB.
BettiProfile reduced_betti(const SimplicialComplex& k, Ring ring);

// Reduced Betti numbers of a join over a field: beta_k = sum_{i+j=k-1} beta_i beta_j.
BettiProfile join_betti(const BettiProfile& a, const BettiProfile& b);

nlohmann::json betti_to_json(const BettiProfile& b);
std::string betti_plain(const BettiProfile& b);

struct ReisnerFailure {
    Face face;
    int degree = 0;
    std::int64_t value = 0;
    std::string reason;
};

struct ReisnerReport {
    int n = 3;
    std::size_t faces_checked = 0;
    std::size_t links_computed = 0;
    std::size_t distinct_signatures = 0;
    std::vector<ReisnerFailure> failures;

    bool passed() const { return failures.empty(); }
};

// Expected top Betti number of the link of f: (c-1)! * prod (c(T)-1)!.
std::int64_t link_sphere_count(const Face& f);

// Vanishing below the top dimension for every face link, plus the top count.
// With deduplicate, one link per signature from link_signature is computed.
ReisnerReport reisner_check(const WhitehouseComplex& k, unsigned jobs = 1, bool deduplicate = true);
ReisnerReport reisner_check(int n, unsigned jobs = 1, bool deduplicate = true);

nlohmann::json reisner_to_json(const ReisnerReport& r);

}  // namespace whitehouse

#endif  // WHITEHOUSE_HOMOLOGY_HPP
