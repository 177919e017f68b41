#ifndef WHITEHOUSE_COMPLEX_HPP
#define WHITEHOUSE_COMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace whitehouse {

using Vertex = std::uint32_t;

// Faces of one fixed size, stored flat and interned by an open-addressing
// index into the flat storage.
class FaceTable {
public:
    explicit FaceTable(std::size_t width = 0) : width_(width) {}

    std::size_t width() const { return width_; }
    std::size_t size() const { return count_; }

    // Returns the id of the face and whether it was newly inserted.
    std::pair<std::size_t, bool> insert(std::span<const Vertex> face);
    std::optional<std::size_t> find(std::span<const Vertex> face) const;
    std::span<const Vertex> operator[](std::size_t id) const {
        return {data_.data() + id * width_, width_};
    }

    // Reorders faces lexicographically; ids change.
    void sort();

    std::span<const Vertex> raw() const { return data_; }

private:
    std::size_t hash(std::span<const Vertex> face) const;
    void rehash(std::size_t buckets);

    std::size_t width_;
    std::size_t count_ = 0;
    std::vector<Vertex> data_;
    std::vector<std::uint32_t> slots_;  // face id + 1, 0 = empty
};

// A finite abstract simplicial complex on vertices 0..vertex_count()-1.
// Faces are sorted vertex lists, grouped by dimension; within a dimension
// they are ordered lexicographically and the id is the position in that
// order. The empty face is always present.
class SimplicialComplex {
public:
    class Builder;

    // The complex {emptyset}.
    explicit SimplicialComplex(std::size_t vertex_count = 0);

    // Faces must be closed under taking subsets (the empty face may be omitted).
    static SimplicialComplex from_faces(std::size_t vertex_count,
                                        const std::vector<std::vector<Vertex>>& faces);
    // Adds every subset of every given face.
    static SimplicialComplex from_facets(std::size_t vertex_count,
                                         const std::vector<std::vector<Vertex>>& facets);

    std::size_t vertex_count() const { return vertex_count_; }
    int dimension() const { return static_cast<int>(tables_.size()) - 2; }

    std::size_t face_count(int dim) const;
    std::size_t size() const;  // all faces, including the empty one

    std::span<const Vertex> face(int dim, std::size_t id) const { return tables_[dim + 1][id]; }
    std::optional<std::size_t> find(std::span<const Vertex> face) const;
    bool contains(std::span<const Vertex> face) const { return find(face).has_value(); }

    // Flat numbering of all faces: dimension-major, then id.
    std::size_t global_index(int dim, std::size_t id) const { return offsets_[dim + 1] + id; }
    std::pair<int, std::size_t> locate(std::size_t global) const;
    std::optional<std::size_t> find_global(std::span<const Vertex> face) const;

    std::vector<std::vector<Vertex>> all_faces() const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);

private:
    void finalize();

    std::size_t vertex_count_;
    std::vector<FaceTable> tables_;      // tables_[k] holds faces with k vertices
    std::vector<std::size_t> offsets_;  // prefix sums of table sizes
};

// Incremental construction; faces are sorted on insertion.
class SimplicialComplex::Builder {
public:
    explicit Builder(std::size_t vertex_count) : vertex_count_(vertex_count) {}
    // False if the face was already present.
    bool add(std::vector<Vertex> face);
    void add_with_subsets(std::vector<Vertex> face);
    SimplicialComplex build(bool check_closure) &&;

private:
    std::size_t vertex_count_;
    std::vector<FaceTable> tables_;
};

using ComplexBuilder = SimplicialComplex::Builder;

// f_{-1}, f_0, ..., f_{dim}; entries[0] is the empty face.
struct FVector {
    std::vector<std::int64_t> entries;

    int dimension() const { return static_cast<int>(entries.size()) - 2; }
    std::int64_t at(int dim) const;
    friend bool operator==(const FVector&, const FVector&) = default;
};

// h_0, ..., h_d.
struct HVector {
    std::vector<std::int64_t> entries;

    int d() const { return static_cast<int>(entries.size()) - 1; }
    friend bool operator==(const HVector&, const HVector&) = default;
};

FVector f_vector(const SimplicialComplex& k);
HVector h_vector_of(const FVector& f, int d);
FVector f_vector_of(const HVector& h);

std::int64_t binomial(int n, int k);

// Sum_{i >= -1} (-1)^i f_i.
std::int64_t reduced_euler_characteristic(const FVector& f);

// f(t) = sum f_{i-1} t^i, i.e. the entries read as polynomial coefficients.
std::vector<std::int64_t> f_polynomial_product(const FVector& a, const FVector& b);

// (dim, id) pairs of maximal faces, ordered by dimension then id.
std::vector<std::pair<int, std::size_t>> facets(const SimplicialComplex& k);
bool is_pure(const SimplicialComplex& k);

struct Subcomplex {
    SimplicialComplex complex;
    std::vector<Vertex> to_parent;  // vertex i of complex is to_parent[i] in the parent
};

// Faces G with G & F = {} and G | F in K, on the vertices that occur.
Subcomplex link(const SimplicialComplex& k, std::span<const Vertex> face);

// Vertices of l are shifted past those of k.
SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l);
SimplicialComplex join_all(const std::vector<SimplicialComplex>& factors);

// Face poset ranked by |face|; elements use the global face numbering.
struct FacePoset {
    bool include_empty = true;
    std::vector<int> rank;                       // per element (global index)
    std::vector<std::size_t> cover_offsets;      // CSR over elements
    std::vector<std::size_t> lower_covers;       // global indices one rank below
    // Without the empty face, global index 0 is kept in the arrays but is not an element.
    std::size_t element_count() const { return rank.size() - (include_empty ? 0 : 1); }
    std::size_t cover_count() const { return lower_covers.size(); }
    std::span<const std::size_t> covers_below(std::size_t element) const {
        return {lower_covers.data() + cover_offsets[element],
                cover_offsets[element + 1] - cover_offsets[element]};
    }
    bool contains(std::size_t element) const { return include_empty || element != 0; }
};

FacePoset face_poset(const SimplicialComplex& k, bool include_empty);

using VertexLabeler = std::function<nlohmann::json(Vertex)>;
using FaceLabeler = std::function<std::string(std::span<const Vertex>)>;

// {"vertices": [...], "faces": [[indices]...]}, faces sorted by (dimension, lex).
nlohmann::json complex_to_json(const SimplicialComplex& k, const VertexLabeler& label);
SimplicialComplex complex_from_json(const nlohmann::json& j);

std::string face_string(std::span<const Vertex> face);

// Rank-layered DOT of the Hasse diagram of the face poset.
std::string hasse_dot(const SimplicialComplex& k, const FacePoset& p, const FaceLabeler& label);

}  // namespace whitehouse

#endif  // WHITEHOUSE_COMPLEX_HPP
