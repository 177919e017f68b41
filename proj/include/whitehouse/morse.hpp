#ifndef WHITEHOUSE_MORSE_HPP
#define WHITEHOUSE_MORSE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "whitehouse/complex.hpp"
#include "whitehouse/whitehouse.hpp"

namespace whitehouse {

// A partial pairing of faces by global index; partner[x] == -1 marks x critical.
struct MorseMatching {
    std::vector<std::int64_t> partner;

    bool is_critical(std::size_t x) const { return partner[x] < 0; }
    // (lower, upper), ordered by lower; `rank` decides which side is lower.
    std::vector<std::pair<std::size_t, std::size_t>> pairs(const FacePoset& p) const;
    std::vector<std::size_t> critical(const FacePoset& p) const;
};

// Throws std::invalid_argument unless m is a matching along cover edges of p.
void check_matching(const FacePoset& p, const MorseMatching& m);

struct AcyclicityReport {
    bool acyclic = true;
    std::vector<std::size_t> cycle;  // closed walk v0 -> v1 -> ... -> v0 (first not repeated)
};

// Checks each pair of adjacent ranks separately, on matched elements only.
AcyclicityReport verify_acyclic(const FacePoset& p, const MorseMatching& m);

// Dimension -> number of critical faces.
std::map<int, std::size_t> critical_census(const FacePoset& p, const MorseMatching& m);

// A(F) -- B(F) and C(F,S) -- D(F,S) on each level, E-copies matched by
// relabeling the matching one level down.
MorseMatching build_matching(const RecursiveBuild& build);
MorseMatching build_matching(int n);

// The part of the matching that lives on the images of A, B, C and D.
struct AbcdPart {
    std::vector<char> in_q;    // by global index
    MorseMatching matching;    // pairs inside Q only
    SimplicialComplex complex; // Q as a subcomplex, same vertex labels as the level
};
AbcdPart abcd_part(const Level& level);

// Q is a lower order ideal and every E(., i) image is an upper order ideal.
bool check_order_ideals(const Level& level);

struct CriticalCharacterization {
    int n = 3;
    std::size_t critical_count = 0;
    std::size_t expected_count = 0;  // (n-2)!
    bool all_facets = true;
    // Each cell peels down to the empty face of Delta_3 by undoing E maps.
    bool all_iterated_e = true;
    std::size_t nested_chains = 0;
    bool ok() const { return all_facets && all_iterated_e && critical_count == expected_count; }
};

// Inverts E: the block {i, n} is removed and n deleted from every other block.
bool is_iterated_e_image(const Face& f);

CriticalCharacterization characterize_critical(int n);

nlohmann::json matching_to_json(const WhitehouseComplex& k, const FacePoset& p, const MorseMatching& m);
std::string matching_dot(const WhitehouseComplex& k, const FacePoset& p, const MorseMatching& m);

}  // namespace whitehouse

#endif  // WHITEHOUSE_MORSE_HPP
