#include "whitehouse/complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace whitehouse {

// ---------------------------------------------------------------- FaceTable

std::size_t FaceTable::hash(std::span<const Vertex> face) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (Vertex v : face) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
}

void FaceTable::rehash(std::size_t buckets) {
    slots_.assign(buckets, 0);
    const std::size_t mask = buckets - 1;
    for (std::size_t id = 0; id < count_; ++id) {
        std::size_t pos = hash((*this)[id]) & mask;
        while (slots_[pos] != 0) pos = (pos + 1) & mask;
        slots_[pos] = static_cast<std::uint32_t>(id + 1);
    }
}

std::optional<std::size_t> FaceTable::find(std::span<const Vertex> face) const {
    if (face.size() != width_ || slots_.empty()) return std::nullopt;
    const std::size_t mask = slots_.size() - 1;
    std::size_t pos = hash(face) & mask;
    while (slots_[pos] != 0) {
        std::size_t id = slots_[pos] - 1;
        auto stored = (*this)[id];
        if (std::equal(stored.begin(), stored.end(), face.begin())) return id;
        pos = (pos + 1) & mask;
    }
    return std::nullopt;
}

std::pair<std::size_t, bool> FaceTable::insert(std::span<const Vertex> face) {
    if (face.size() != width_) throw std::logic_error("face width mismatch");
    if (auto id = find(face)) return {*id, false};
    if ((count_ + 1) * 2 > slots_.size()) rehash(std::max<std::size_t>(16, slots_.size() * 2));
    data_.insert(data_.end(), face.begin(), face.end());
    const std::size_t id = count_++;
    const std::size_t mask = slots_.size() - 1;
    std::size_t pos = hash(face) & mask;
    while (slots_[pos] != 0) pos = (pos + 1) & mask;
    slots_[pos] = static_cast<std::uint32_t>(id + 1);
    return {id, true};
}

void FaceTable::sort() {
    std::vector<std::size_t> order(count_);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
        auto fa = (*this)[a];
        auto fb = (*this)[b];
        return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(), fb.end());
    });
    std::vector<Vertex> sorted;
    sorted.reserve(data_.size());
    for (std::size_t id : order) {
        auto f = (*this)[id];
        sorted.insert(sorted.end(), f.begin(), f.end());
    }
    data_ = std::move(sorted);
    rehash(slots_.empty() ? 16 : slots_.size());
}

// ---------------------------------------------------------------- Builder

namespace {

void normalize(std::vector<Vertex>& face, std::size_t vertex_count) {
    std::sort(face.begin(), face.end());
    if (std::adjacent_find(face.begin(), face.end()) != face.end()) {
        throw std::invalid_argument("face has a repeated vertex: " + face_string(face));
    }
    if (!face.empty() && face.back() >= vertex_count) {
        throw std::invalid_argument("vertex " + std::to_string(face.back()) + " out of range");
    }
}

}  // namespace

bool SimplicialComplex::Builder::add(std::vector<Vertex> face) {
    normalize(face, vertex_count_);
    while (tables_.size() <= face.size()) tables_.emplace_back(tables_.size());
    return tables_[face.size()].insert(face).second;
}

void SimplicialComplex::Builder::add_with_subsets(std::vector<Vertex> face) {
    normalize(face, vertex_count_);
    std::vector<std::vector<Vertex>> stack{std::move(face)};
    while (!stack.empty()) {
        auto f = std::move(stack.back());
        stack.pop_back();
        while (tables_.size() <= f.size()) tables_.emplace_back(tables_.size());
        if (!tables_[f.size()].insert(f).second) continue;  // subsets already present
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            std::vector<Vertex> sub;
            sub.reserve(f.size() - 1);
            for (std::size_t j = 0; j < f.size(); ++j) {
                if (j != drop) sub.push_back(f[j]);
            }
            stack.push_back(std::move(sub));
        }
    }
}

SimplicialComplex SimplicialComplex::Builder::build(bool check_closure) && {
    if (tables_.empty()) tables_.emplace_back(0);
    tables_[0].insert(std::span<const Vertex>{});
    while (tables_.size() > 1 && tables_.back().size() == 0) tables_.pop_back();
    if (check_closure) {
        std::vector<Vertex> sub;
        for (std::size_t k = 1; k < tables_.size(); ++k) {
            for (std::size_t id = 0; id < tables_[k].size(); ++id) {
                auto f = tables_[k][id];
                for (std::size_t drop = 0; drop < k; ++drop) {
                    sub.clear();
                    for (std::size_t j = 0; j < k; ++j) {
                        if (j != drop) sub.push_back(f[j]);
                    }
                    if (!tables_[k - 1].find(sub)) {
                        throw std::invalid_argument("not closed under subsets: " +
                                                    face_string(f) + " lacks " +
                                                    face_string(sub));
                    }
                }
            }
        }
    }
    SimplicialComplex out(vertex_count_);
    out.tables_ = std::move(tables_);
    out.finalize();
    return out;
}

// ---------------------------------------------------------------- SimplicialComplex

SimplicialComplex::SimplicialComplex(std::size_t vertex_count) : vertex_count_(vertex_count) {
    tables_.emplace_back(0);
    tables_[0].insert(std::span<const Vertex>{});
    finalize();
}

void SimplicialComplex::finalize() {
    offsets_.assign(tables_.size() + 1, 0);
    for (std::size_t k = 0; k < tables_.size(); ++k) {
        tables_[k].sort();
        offsets_[k + 1] = offsets_[k] + tables_[k].size();
    }
}

SimplicialComplex SimplicialComplex::from_faces(std::size_t vertex_count,
                                                const std::vector<std::vector<Vertex>>& faces) {
    Builder b(vertex_count);
    for (const auto& f : faces) b.add(f);
    return std::move(b).build(true);
}

SimplicialComplex SimplicialComplex::from_facets(std::size_t vertex_count,
                                                 const std::vector<std::vector<Vertex>>& facets) {
    Builder b(vertex_count);
    for (const auto& f : facets) b.add_with_subsets(f);
    return std::move(b).build(false);
}

std::size_t SimplicialComplex::face_count(int dim) const {
    if (dim + 1 < 0 || dim + 1 >= static_cast<int>(tables_.size())) return 0;
    return tables_[dim + 1].size();
}

std::size_t SimplicialComplex::size() const { return offsets_.back(); }

std::optional<std::size_t> SimplicialComplex::find(std::span<const Vertex> face) const {
    if (face.size() >= tables_.size()) return std::nullopt;
    return tables_[face.size()].find(face);
}

std::optional<std::size_t> SimplicialComplex::find_global(std::span<const Vertex> face) const {
    auto id = find(face);
    if (!id) return std::nullopt;
    return offsets_[face.size()] + *id;
}

std::pair<int, std::size_t> SimplicialComplex::locate(std::size_t global) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
    std::size_t k = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    return {static_cast<int>(k) - 1, global - offsets_[k]};
}

std::vector<std::vector<Vertex>> SimplicialComplex::all_faces() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(size());
    for (const auto& t : tables_) {
        for (std::size_t id = 0; id < t.size(); ++id) {
            auto f = t[id];
            out.emplace_back(f.begin(), f.end());
        }
    }
    return out;
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    if (a.vertex_count_ != b.vertex_count_ || a.tables_.size() != b.tables_.size()) return false;
    for (std::size_t k = 0; k < a.tables_.size(); ++k) {
        auto ra = a.tables_[k].raw();
        auto rb = b.tables_[k].raw();
        if (a.tables_[k].size() != b.tables_[k].size() ||
            !std::equal(ra.begin(), ra.end(), rb.begin(), rb.end())) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- vectors

std::int64_t FVector::at(int dim) const {
    if (dim + 1 < 0 || dim + 1 >= static_cast<int>(entries.size())) return 0;
    return entries[dim + 1];
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

FVector f_vector(const SimplicialComplex& k) {
    FVector f;
    for (int dim = -1; dim <= k.dimension(); ++dim) {
        f.entries.push_back(static_cast<std::int64_t>(k.face_count(dim)));
    }
    return f;
}

HVector h_vector_of(const FVector& f, int d) {
    if (d < f.dimension() + 1) {
        throw std::invalid_argument("h-vector length d=" + std::to_string(d) +
                                    " is below dimension+1=" + std::to_string(f.dimension() + 1));
    }
    HVector h;
    h.entries.assign(d + 1, 0);
    for (int k = 0; k <= d; ++k) {
        std::int64_t sum = 0;
        for (int i = 0; i <= k; ++i) {
            const std::int64_t sign = ((k - i) % 2 == 0) ? 1 : -1;
            sum += sign * binomial(d - i, k - i) * f.at(i - 1);
        }
        h.entries[k] = sum;
    }
    return h;
}

FVector f_vector_of(const HVector& h) {
    const int d = h.d();
    FVector f;
    f.entries.assign(d + 1, 0);
    for (int i = 0; i <= d; ++i) {
        std::int64_t sum = 0;
        for (int k = 0; k <= i; ++k) sum += binomial(d - k, i - k) * h.entries[k];
        f.entries[i] = sum;
    }
    while (f.entries.size() > 1 && f.entries.back() == 0) f.entries.pop_back();
    return f;
}

std::int64_t reduced_euler_characteristic(const FVector& f) {
    std::int64_t chi = 0;
    for (int dim = -1; dim <= f.dimension(); ++dim) {
        chi += ((dim + 2) % 2 == 0 ? 1 : -1) * f.at(dim);
    }
    return chi;
}

std::vector<std::int64_t> f_polynomial_product(const FVector& a, const FVector& b) {
    std::vector<std::int64_t> out(a.entries.size() + b.entries.size() - 1, 0);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        for (std::size_t j = 0; j < b.entries.size(); ++j) out[i + j] += a.entries[i] * b.entries[j];
    }
    return out;
}

// ---------------------------------------------------------------- facets, link, join

std::vector<std::pair<int, std::size_t>> facets(const SimplicialComplex& k) {
    std::vector<std::vector<char>> maximal(k.dimension() + 2);
    for (int dim = -1; dim <= k.dimension(); ++dim) maximal[dim + 1].assign(k.face_count(dim), 1);
    std::vector<Vertex> sub;
    for (int dim = 0; dim <= k.dimension(); ++dim) {
        for (std::size_t id = 0; id < k.face_count(dim); ++id) {
            auto f = k.face(dim, id);
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                sub.clear();
                for (std::size_t j = 0; j < f.size(); ++j) {
                    if (j != drop) sub.push_back(f[j]);
                }
                maximal[dim][*k.find(sub)] = 0;
            }
        }
    }
    std::vector<std::pair<int, std::size_t>> out;
    for (int dim = -1; dim <= k.dimension(); ++dim) {
        for (std::size_t id = 0; id < k.face_count(dim); ++id) {
            if (maximal[dim + 1][id]) out.emplace_back(dim, id);
        }
    }
    return out;
}

bool is_pure(const SimplicialComplex& k) {
    for (const auto& [dim, id] : facets(k)) {
        if (dim != k.dimension()) return false;
    }
    return true;
}

Subcomplex link(const SimplicialComplex& k, std::span<const Vertex> face) {
    if (!k.contains(face)) throw std::invalid_argument("link of a non-face " + face_string(face));
    std::vector<std::vector<Vertex>> rest;
    std::vector<char> used(k.vertex_count(), 0);
    const int fdim = static_cast<int>(face.size()) - 1;
    for (int dim = fdim; dim <= k.dimension(); ++dim) {
        for (std::size_t id = 0; id < k.face_count(dim); ++id) {
            auto h = k.face(dim, id);
            if (!std::includes(h.begin(), h.end(), face.begin(), face.end())) continue;
            std::vector<Vertex> g;
            std::set_difference(h.begin(), h.end(), face.begin(), face.end(),
                                std::back_inserter(g));
            for (Vertex v : g) used[v] = 1;
            rest.push_back(std::move(g));
        }
    }
    Subcomplex out;
    std::vector<Vertex> to_local(k.vertex_count(), 0);
    for (Vertex v = 0; v < k.vertex_count(); ++v) {
        if (used[v]) {
            to_local[v] = static_cast<Vertex>(out.to_parent.size());
            out.to_parent.push_back(v);
        }
    }
    ComplexBuilder b(out.to_parent.size());
    for (auto& g : rest) {
        for (Vertex& v : g) v = to_local[v];
        b.add(std::move(g));
    }
    out.complex = std::move(b).build(false);
    return out;
}

SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l) {
    const auto shift = static_cast<Vertex>(k.vertex_count());
    ComplexBuilder b(k.vertex_count() + l.vertex_count());
    for (int dk = -1; dk <= k.dimension(); ++dk) {
        for (std::size_t ik = 0; ik < k.face_count(dk); ++ik) {
            auto fk = k.face(dk, ik);
            for (int dl = -1; dl <= l.dimension(); ++dl) {
                for (std::size_t il = 0; il < l.face_count(dl); ++il) {
                    std::vector<Vertex> u(fk.begin(), fk.end());
                    for (Vertex v : l.face(dl, il)) u.push_back(v + shift);
                    b.add(std::move(u));
                }
            }
        }
    }
    return std::move(b).build(false);
}

SimplicialComplex join_all(const std::vector<SimplicialComplex>& factors) {
    SimplicialComplex out;  // {emptyset} is the unit for join
    for (const auto& f : factors) out = join(out, f);
    return out;
}

// ---------------------------------------------------------------- poset

FacePoset face_poset(const SimplicialComplex& k, bool include_empty) {
    FacePoset p;
    p.include_empty = include_empty;
    const std::size_t total = k.size();
    p.rank.resize(total);
    p.cover_offsets.assign(total + 1, 0);
    std::vector<Vertex> sub;
    for (int dim = -1; dim <= k.dimension(); ++dim) {
        for (std::size_t id = 0; id < k.face_count(dim); ++id) {
            const std::size_t g = k.global_index(dim, id);
            p.rank[g] = dim + 1;
            auto f = k.face(dim, id);
            if (dim >= 0 && (dim > 0 || include_empty)) {
                for (std::size_t drop = 0; drop < f.size(); ++drop) {
                    sub.clear();
                    for (std::size_t j = 0; j < f.size(); ++j) {
                        if (j != drop) sub.push_back(f[j]);
                    }
                    p.lower_covers.push_back(*k.find_global(sub));
                }
            }
            p.cover_offsets[g + 1] = p.lower_covers.size();
        }
    }
    return p;
}

// ---------------------------------------------------------------- export

std::string face_string(std::span<const Vertex> face) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < face.size(); ++i) out << (i ? "," : "") << face[i];
    out << '}';
    return out.str();
}

nlohmann::json complex_to_json(const SimplicialComplex& k, const VertexLabeler& label) {
    nlohmann::json j;
    auto verts = nlohmann::json::array();
    for (Vertex v = 0; v < k.vertex_count(); ++v) verts.push_back(label ? label(v) : nlohmann::json(v));
    j["vertices"] = std::move(verts);
    auto faces = nlohmann::json::array();
    for (int dim = -1; dim <= k.dimension(); ++dim) {
        for (std::size_t id = 0; id < k.face_count(dim); ++id) {
            auto f = k.face(dim, id);
            faces.push_back(std::vector<Vertex>(f.begin(), f.end()));
        }
    }
    j["faces"] = std::move(faces);
    return j;
}

SimplicialComplex complex_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("faces")) {
        throw std::invalid_argument("complex JSON needs \"vertices\" and \"faces\"");
    }
    const std::size_t nv = j.at("vertices").size();
    return SimplicialComplex::from_faces(nv, j.at("faces").get<std::vector<std::vector<Vertex>>>());
}

std::string hasse_dot(const SimplicialComplex& k, const FacePoset& p, const FaceLabeler& label) {
    std::ostringstream out;
    out << "digraph hasse {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
    for (int dim = -1; dim <= k.dimension(); ++dim) {
        if (dim == -1 && !p.include_empty) continue;
        out << "  { rank=same;";
        for (std::size_t id = 0; id < k.face_count(dim); ++id) out << " f" << k.global_index(dim, id) << ';';
        out << " }\n";
    }
    for (int dim = -1; dim <= k.dimension(); ++dim) {
        if (dim == -1 && !p.include_empty) continue;
        for (std::size_t id = 0; id < k.face_count(dim); ++id) {
            auto f = k.face(dim, id);
            out << "  f" << k.global_index(dim, id) << " [label=\""
                << (label ? label(f) : face_string(f)) << "\"];\n";
        }
    }
    for (std::size_t g = 0; g < p.rank.size(); ++g) {
        for (std::size_t lower : p.covers_below(g)) out << "  f" << lower << " -> f" << g << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace whitehouse
