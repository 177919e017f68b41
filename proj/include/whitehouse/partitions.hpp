#ifndef WHITEHOUSE_PARTITIONS_HPP
#define WHITEHOUSE_PARTITIONS_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace whitehouse {

// Element i of {1,...,n} is bit i of a mask; bit 0 is unused.
using Mask = std::uint32_t;

inline constexpr int kMaxN = 30;

Mask full_mask(int n);

// A vertex of the Whitehouse complex: a subset S of {2,...,n} with
// 2 <= |S| <= n-2. It stands for the stable 2-partition S / complement(S),
// always stored by the block that does not contain 1.
class BlockSet {
public:
    BlockSet() = default;

    static BlockSet from_mask(int n, Mask mask);
    static BlockSet from_members(int n, std::span<const int> members);

    int n() const { return n_; }
    Mask mask() const { return mask_; }
    int size() const;
    bool contains(int element) const { return (mask_ >> element) & 1u; }
    std::vector<int> members() const;

    std::string to_string() const;

    friend bool operator==(const BlockSet&, const BlockSet&) = default;
    // (n, cardinality, lexicographic on sorted members)
    friend std::strong_ordering operator<=>(const BlockSet& a, const BlockSet& b);

private:
    BlockSet(int n, Mask mask) : n_(n), mask_(mask) {}

    int n_ = 0;
    Mask mask_ = 0;
};

// Lexicographic comparison of two equal-size subsets given as masks.
bool mask_less(Mask a, Mask b);

bool is_vertex_mask(int n, Mask mask);

// An unordered split of {1,...,n} into two blocks of size at least 2.
class StablePartition {
public:
    StablePartition(int n, Mask block1, Mask block2);

    int n() const { return n_; }
    // Block containing 1 and its complement.
    Mask with_one() const { return with_one_; }
    Mask without_one() const { return without_one_; }

    std::string to_string() const;

    friend bool operator==(const StablePartition&, const StablePartition&) = default;

private:
    int n_;
    Mask without_one_;
    Mask with_one_;
};

StablePartition to_partition(const BlockSet& v);

// Number of distinct nonempty sets among the four intersections S_i & T_j.
int a_value(const StablePartition& sigma, const StablePartition& tau);

// Nested or disjoint.
bool compatible(const BlockSet& u, const BlockSet& v);
bool compatible_masks(Mask u, Mask v);

// All vertices of Delta_n in canonical order.
std::vector<BlockSet> vertex_set(int n);

// Minimal non-faces of Delta_n: the crossing vertex pairs, in canonical order.
std::vector<std::pair<BlockSet, BlockSet>> ideal_generators(int n);

void to_json(nlohmann::json& j, const BlockSet& v);
void from_json(const nlohmann::json& j, BlockSet& v);

nlohmann::json generators_to_json(const std::vector<std::pair<BlockSet, BlockSet>>& gens);

}  // namespace whitehouse

#endif  // WHITEHOUSE_PARTITIONS_HPP
