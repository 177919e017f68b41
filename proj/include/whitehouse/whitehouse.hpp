#ifndef WHITEHOUSE_WHITEHOUSE_HPP
#define WHITEHOUSE_WHITEHOUSE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "whitehouse/complex.hpp"
#include "whitehouse/partitions.hpp"

namespace whitehouse {

// Largest n for which a complex is materialized (mask lookup tables are 2^(n+1)).
inline constexpr int kMaxBuildN = 16;

// Canonical vertex order on masks: cardinality, then lexicographic.
bool canonical_less(Mask a, Mask b);

// A face of Delta_n: a laminar family of vertices, canonically sorted.
class Face {
public:
    Face() = default;

    // Validates vertices and laminarity.
    static Face make(int n, std::vector<Mask> blocks);
    static Face from_blocks(int n, const std::vector<BlockSet>& blocks);

    int n() const { return n_; }
    std::size_t size() const { return blocks_.size(); }
    int dimension() const { return static_cast<int>(blocks_.size()) - 1; }
    bool empty() const { return blocks_.empty(); }

    std::span<const Mask> masks() const { return blocks_; }
    std::vector<BlockSet> blocks() const;
    bool contains(Mask block) const;

    std::string to_string() const;

    friend bool operator==(const Face&, const Face&) = default;

private:
    Face(int n, std::vector<Mask> blocks) : n_(n), blocks_(std::move(blocks)) {}

    int n_ = 0;
    std::vector<Mask> blocks_;
};

// {"n": int, "blocks": [[members]...]}
void to_json(nlohmann::json& j, const Face& f);
void from_json(const nlohmann::json& j, Face& f);

// Delta_n together with its vertex labels.
struct WhitehouseComplex {
    int n = 3;
    std::vector<BlockSet> vertices;           // canonical order; index = Vertex
    std::vector<std::int32_t> vertex_of_mask;  // -1 when the mask is not a vertex
    SimplicialComplex complex;

    std::vector<Vertex> vertex_list(const Face& f) const;
    Face face(int dim, std::size_t id) const;
    Face face_at(std::size_t global) const;
    std::optional<std::size_t> find(const Face& f) const;  // global index
};

// Empty complex skeleton for Delta_n: vertex labels and lookup table only.
WhitehouseComplex whitehouse_frame(int n);

// Depth-first enumeration of all laminar families.
WhitehouseComplex build_direct(int n);

// The five maps Delta_n -> Delta_{n+1}.
Face map_A(const Face& f);
Face map_B(const Face& f);
Face map_C(const Face& f, Mask s);
Face map_D(const Face& f, Mask s);
Face map_E(const Face& f, int i);

enum class MapKind : std::uint8_t { A, B, C, D, E };

char map_name(MapKind k);

// How a face of Delta_{n+1} arose from a face of Delta_n.
struct Provenance {
    MapKind kind = MapKind::A;
    std::size_t source = 0;  // global index in the previous level
    Mask block = 0;          // S for C and D
    int element = 0;         // i for E
};

struct Level {
    WhitehouseComplex complex;
    std::vector<Provenance> provenance;  // by global face index; empty for n = 3
};

struct RecursiveBuild {
    std::vector<Level> levels;  // levels[k] is Delta_{k+3}

    const Level& level(int n) const { return levels.at(n - 3); }
    const Level& top() const { return levels.back(); }
};

// Delta_3 = {emptyset}, then all five maps level by level. Throws
// std::logic_error if two derivations produce the same face.
RecursiveBuild build_recursive(int n);

struct ForestNode {
    Mask block = 0;
    int parent = -1;                // node index, -1 at top level
    std::vector<int> child_nodes;   // node indices
    std::vector<int> child_leaves;  // elements of {2,...,n}
    int child_count() const { return static_cast<int>(child_nodes.size() + child_leaves.size()); }
};

// Internal nodes are the blocks of the face (same order); leaves are 2..n.
struct Forest {
    int n = 3;
    std::vector<ForestNode> nodes;
    std::vector<int> top_nodes;
    std::vector<int> top_leaves;
    std::vector<int> leaf_parent;  // indexed by element; -1 for a bare leaf

    // Components, counting bare leaves.
    int components() const { return static_cast<int>(top_nodes.size() + top_leaves.size()); }
};

Forest forest_of(const Face& f);
std::string forest_dot(const Forest& forest);

// c+1 followed by c(T)+1 for each block T in face order: the indices m of
// the factors Delta_m whose join is the link of the face.
std::vector<int> link_decomposition(const Face& f);
// The same multiset sorted in decreasing order.
std::vector<int> link_signature(const Face& f);

// Checks that the link of f in k equals, after an explicit relabeling of
// vertices, the join of the Delta_m given by link_decomposition.
bool verify_link_decomposition(const WhitehouseComplex& k, const Face& f);

FVector f_recurrence(int n);
HVector h_recurrence(int n);

std::int64_t double_factorial(int m);
std::int64_t factorial(int m);

}  // namespace whitehouse

#endif  // WHITEHOUSE_WHITEHOUSE_HPP
