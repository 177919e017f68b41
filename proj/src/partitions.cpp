#include "whitehouse/partitions.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace whitehouse {

namespace {

void check_n(int n) {
    if (n < 3 || n > kMaxN) {
        throw std::invalid_argument("ambient size n must lie in [3, " + std::to_string(kMaxN) +
                                    "], got " + std::to_string(n));
    }
}

void check_same_n(int a, int b) {
    if (a != b) {
        throw std::invalid_argument("incompatible ambient sets: n=" + std::to_string(a) +
                                    " vs n=" + std::to_string(b));
    }
}

std::string mask_string(Mask m) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (int i = 1; i < 32; ++i) {
        if ((m >> i) & 1u) {
            if (!first) out << ',';
            out << i;
            first = false;
        }
    }
    out << '}';
    return out.str();
}

}  // namespace

Mask full_mask(int n) {
    return ((Mask{1} << (n + 1)) - 1) & ~Mask{1};
}

bool mask_less(Mask a, Mask b) {
    Mask diff = a ^ b;
    if (diff == 0) return false;
    // the smallest element where they differ decides
    return (a & (diff & (~diff + 1))) != 0;
}

bool is_vertex_mask(int n, Mask mask) {
    if (n < 3 || n > kMaxN) return false;
    if (mask & ~full_mask(n)) return false;
    if (mask & 0b10u) return false;
    int size = std::popcount(mask);
    return size >= 2 && size <= n - 2;
}

BlockSet BlockSet::from_mask(int n, Mask mask) {
    check_n(n);
    if (!is_vertex_mask(n, mask)) {
        throw std::invalid_argument("not a vertex of Delta_" + std::to_string(n) + ": " +
                                    mask_string(mask));
    }
    return BlockSet(n, mask);
}

BlockSet BlockSet::from_members(int n, std::span<const int> members) {
    check_n(n);
    Mask mask = 0;
    for (int m : members) {
        if (m < 1 || m > n) {
            throw std::invalid_argument("element " + std::to_string(m) + " outside {1,...," +
                                        std::to_string(n) + "}");
        }
        if ((mask >> m) & 1u) {
            throw std::invalid_argument("repeated element " + std::to_string(m));
        }
        mask |= Mask{1} << m;
    }
    return from_mask(n, mask);
}

int BlockSet::size() const { return std::popcount(mask_); }

std::vector<int> BlockSet::members() const {
    std::vector<int> out;
    for (int i = 2; i <= n_; ++i) {
        if (contains(i)) out.push_back(i);
    }
    return out;
}

std::string BlockSet::to_string() const { return mask_string(mask_); }

std::strong_ordering operator<=>(const BlockSet& a, const BlockSet& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    if (a.mask_ == b.mask_) return std::strong_ordering::equal;
    return mask_less(a.mask_, b.mask_) ? std::strong_ordering::less : std::strong_ordering::greater;
}

StablePartition::StablePartition(int n, Mask block1, Mask block2) : n_(n) {
    check_n(n);
    if ((block1 & block2) != 0 || (block1 | block2) != full_mask(n)) {
        throw std::invalid_argument("blocks " + mask_string(block1) + " and " +
                                    mask_string(block2) + " do not partition {1,...," +
                                    std::to_string(n) + "}");
    }
    if (std::popcount(block1) < 2 || std::popcount(block2) < 2) {
        throw std::invalid_argument("unstable partition: both blocks need at least 2 elements");
    }
    if (block1 & 0b10u) {
        with_one_ = block1;
        without_one_ = block2;
    } else {
        with_one_ = block2;
        without_one_ = block1;
    }
}

std::string StablePartition::to_string() const {
    return mask_string(without_one_) + "/" + mask_string(with_one_);
}

StablePartition to_partition(const BlockSet& v) {
    return StablePartition(v.n(), v.mask(), full_mask(v.n()) & ~v.mask());
}

int a_value(const StablePartition& sigma, const StablePartition& tau) {
    check_same_n(sigma.n(), tau.n());
    const Mask s[2] = {sigma.without_one(), sigma.with_one()};
    const Mask t[2] = {tau.without_one(), tau.with_one()};
    std::vector<Mask> seen;
    for (Mask si : s) {
        for (Mask tj : t) {
            Mask cap = si & tj;
            if (cap != 0 && std::find(seen.begin(), seen.end(), cap) == seen.end()) {
                seen.push_back(cap);
            }
        }
    }
    return static_cast<int>(seen.size());
}

bool compatible_masks(Mask u, Mask v) {
    Mask cap = u & v;
    return cap == 0 || cap == u || cap == v;
}

bool compatible(const BlockSet& u, const BlockSet& v) {
    check_same_n(u.n(), v.n());
    return compatible_masks(u.mask(), v.mask());
}

std::vector<BlockSet> vertex_set(int n) {
    check_n(n);
    std::vector<BlockSet> out;
    // subsets of {2,...,n}: bits 2..n
    const Mask limit = Mask{1} << (n + 1);
    for (Mask m = 0; m < limit; m += 4) {
        if (is_vertex_mask(n, m)) out.push_back(BlockSet::from_mask(n, m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<BlockSet, BlockSet>> ideal_generators(int n) {
    auto verts = vertex_set(n);
    std::vector<std::pair<BlockSet, BlockSet>> out;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            if (!compatible(verts[i], verts[j])) out.emplace_back(verts[i], verts[j]);
        }
    }
    return out;
}

void to_json(nlohmann::json& j, const BlockSet& v) {
    j = nlohmann::json{{"n", v.n()}, {"members", v.members()}};
}

void from_json(const nlohmann::json& j, BlockSet& v) {
    if (!j.is_object() || !j.contains("n") || !j.contains("members")) {
        throw std::invalid_argument("BlockSet JSON needs \"n\" and \"members\"");
    }
    int n = j.at("n").get<int>();
    auto members = j.at("members").get<std::vector<int>>();
    v = BlockSet::from_members(n, members);
}

nlohmann::json generators_to_json(const std::vector<std::pair<BlockSet, BlockSet>>& gens) {
    auto arr = nlohmann::json::array();
    for (const auto& [u, v] : gens) arr.push_back(nlohmann::json::array({u, v}));
    return arr;
}

}  // namespace whitehouse
