#include "whitehouse/whitehouse.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace whitehouse {

namespace {

std::string mask_members(Mask m) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (int i = 1; i < 32; ++i) {
        if ((m >> i) & 1u) {
            out << (first ? "" : ",") << i;
            first = false;
        }
    }
    out << '}';
    return out.str();
}

Mask bit(int i) { return Mask{1} << i; }

int lowest_element(Mask m) { return std::countr_zero(m); }

}  // namespace

bool canonical_less(Mask a, Mask b) {
    const int sa = std::popcount(a);
    const int sb = std::popcount(b);
    if (sa != sb) return sa < sb;
    return mask_less(a, b);
}

// ---------------------------------------------------------------- Face

Face Face::make(int n, std::vector<Mask> blocks) {
    for (Mask m : blocks) {
        if (!is_vertex_mask(n, m)) {
            throw std::invalid_argument("block " + mask_members(m) + " is not a vertex of Delta_" +
                                        std::to_string(n));
        }
    }
    std::sort(blocks.begin(), blocks.end(), canonical_less);
    if (std::adjacent_find(blocks.begin(), blocks.end()) != blocks.end()) {
        throw std::invalid_argument("repeated block in face");
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            if (!compatible_masks(blocks[i], blocks[j])) {
                throw std::invalid_argument("blocks " + mask_members(blocks[i]) + " and " +
                                            mask_members(blocks[j]) + " cross");
            }
        }
    }
    return Face(n, std::move(blocks));
}

Face Face::from_blocks(int n, const std::vector<BlockSet>& blocks) {
    std::vector<Mask> masks;
    for (const auto& b : blocks) {
        if (b.n() != n) throw std::invalid_argument("block with mismatched n");
        masks.push_back(b.mask());
    }
    return make(n, std::move(masks));
}

std::vector<BlockSet> Face::blocks() const {
    std::vector<BlockSet> out;
    for (Mask m : blocks_) out.push_back(BlockSet::from_mask(n_, m));
    return out;
}

bool Face::contains(Mask block) const {
    return std::find(blocks_.begin(), blocks_.end(), block) != blocks_.end();
}

std::string Face::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) out += ',';
        out += mask_members(blocks_[i]);
    }
    return out + "}";
}

void to_json(nlohmann::json& j, const Face& f) {
    auto blocks = nlohmann::json::array();
    for (const auto& b : f.blocks()) blocks.push_back(b.members());
    j = nlohmann::json{{"n", f.n()}, {"blocks", std::move(blocks)}};
}

void from_json(const nlohmann::json& j, Face& f) {
    if (!j.is_object() || !j.contains("n") || !j.contains("blocks") || !j.at("blocks").is_array()) {
        throw std::invalid_argument("face JSON needs \"n\" and a \"blocks\" array");
    }
    const int n = j.at("n").get<int>();
    std::vector<BlockSet> blocks;
    for (const auto& b : j.at("blocks")) {
        blocks.push_back(BlockSet::from_members(n, b.get<std::vector<int>>()));
    }
    f = Face::from_blocks(n, blocks);
}

// ---------------------------------------------------------------- complex

std::vector<Vertex> WhitehouseComplex::vertex_list(const Face& f) const {
    if (f.n() != n) throw std::invalid_argument("face of Delta_" + std::to_string(f.n()) +
                                                " used with Delta_" + std::to_string(n));
    std::vector<Vertex> out;
    out.reserve(f.size());
    for (Mask m : f.masks()) {
        std::int32_t v = m < vertex_of_mask.size() ? vertex_of_mask[m] : -1;
        if (v < 0) throw std::invalid_argument("not a vertex: " + mask_members(m));
        out.push_back(static_cast<Vertex>(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Face WhitehouseComplex::face(int dim, std::size_t id) const {
    std::vector<Mask> blocks;
    for (Vertex v : complex.face(dim, id)) blocks.push_back(vertices[v].mask());
    return Face::make(n, std::move(blocks));
}

Face WhitehouseComplex::face_at(std::size_t global) const {
    auto [dim, id] = complex.locate(global);
    return face(dim, id);
}

std::optional<std::size_t> WhitehouseComplex::find(const Face& f) const {
    if (f.n() != n) return std::nullopt;
    for (Mask m : f.masks()) {
        if (m >= vertex_of_mask.size() || vertex_of_mask[m] < 0) return std::nullopt;
    }
    return complex.find_global(vertex_list(f));
}

WhitehouseComplex whitehouse_frame(int n) {
    if (n < 3 || n > kMaxBuildN) {
        throw std::invalid_argument("Delta_n is only materialized for 3 <= n <= " +
                                    std::to_string(kMaxBuildN) + ", got " + std::to_string(n));
    }
    WhitehouseComplex w;
    w.n = n;
    w.vertices = vertex_set(n);
    w.vertex_of_mask.assign(std::size_t{1} << (n + 1), -1);
    for (std::size_t i = 0; i < w.vertices.size(); ++i) {
        w.vertex_of_mask[w.vertices[i].mask()] = static_cast<std::int32_t>(i);
    }
    w.complex = SimplicialComplex(w.vertices.size());
    return w;
}

WhitehouseComplex build_direct(int n) {
    WhitehouseComplex w = whitehouse_frame(n);
    const std::size_t nv = w.vertices.size();
    std::vector<char> compat(nv * nv);
    for (std::size_t a = 0; a < nv; ++a) {
        for (std::size_t b = 0; b < nv; ++b) {
            compat[a * nv + b] = compatible_masks(w.vertices[a].mask(), w.vertices[b].mask());
        }
    }
    ComplexBuilder builder(nv);
    std::vector<Vertex> face;
    // candidates: vertices after the last one added that are compatible with every block so far
    auto extend = [&](auto&& self, const std::vector<Vertex>& candidates) -> void {
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const Vertex v = candidates[i];
            face.push_back(v);
            builder.add(face);
            std::vector<Vertex> next;
            for (std::size_t j = i + 1; j < candidates.size(); ++j) {
                if (compat[v * nv + candidates[j]]) next.push_back(candidates[j]);
            }
            self(self, next);
            face.pop_back();
        }
    };
    std::vector<Vertex> all(nv);
    for (std::size_t i = 0; i < nv; ++i) all[i] = static_cast<Vertex>(i);
    extend(extend, all);
    w.complex = std::move(builder).build(false);
    return w;
}

// ---------------------------------------------------------------- maps

Face map_A(const Face& f) {
    return Face::make(f.n() + 1, std::vector<Mask>(f.masks().begin(), f.masks().end()));
}

Face map_B(const Face& f) {
    std::vector<Mask> blocks(f.masks().begin(), f.masks().end());
    blocks.push_back(full_mask(f.n()) & ~bit(1));
    return Face::make(f.n() + 1, std::move(blocks));
}

Face map_C(const Face& f, Mask s) {
    if (!f.contains(s)) {
        throw std::invalid_argument("map C: " + mask_members(s) + " is not a block of " + f.to_string());
    }
    const Mask added = bit(f.n() + 1);
    std::vector<Mask> blocks;
    for (Mask t : f.masks()) blocks.push_back((t & s) == s ? t | added : t);
    return Face::make(f.n() + 1, std::move(blocks));
}

Face map_D(const Face& f, Mask s) {
    Face c = map_C(f, s);
    std::vector<Mask> blocks(c.masks().begin(), c.masks().end());
    blocks.push_back(s);
    return Face::make(f.n() + 1, std::move(blocks));
}

Face map_E(const Face& f, int i) {
    if (i < 2 || i > f.n()) {
        throw std::invalid_argument("map E: element " + std::to_string(i) + " outside {2,...," +
                                    std::to_string(f.n()) + "}");
    }
    const Mask added = bit(f.n() + 1);
    std::vector<Mask> blocks{bit(i) | added};
    for (Mask t : f.masks()) blocks.push_back((t & bit(i)) ? t | added : t);
    return Face::make(f.n() + 1, std::move(blocks));
}

char map_name(MapKind k) {
    switch (k) {
        case MapKind::A: return 'A';
        case MapKind::B: return 'B';
        case MapKind::C: return 'C';
        case MapKind::D: return 'D';
        case MapKind::E: return 'E';
    }
    return '?';
}

RecursiveBuild build_recursive(int n) {
    if (n < 3 || n > kMaxBuildN) {
        throw std::invalid_argument("build_recursive needs 3 <= n <= " + std::to_string(kMaxBuildN));
    }
    RecursiveBuild out;
    out.levels.push_back(Level{whitehouse_frame(3), {}});
    for (int m = 3; m < n; ++m) {
        const WhitehouseComplex& prev = out.levels.back().complex;
        WhitehouseComplex next = whitehouse_frame(m + 1);
        ComplexBuilder builder(next.vertices.size());
        std::vector<std::pair<std::vector<Vertex>, Provenance>> generated;
        generated.reserve(prev.complex.size() * static_cast<std::size_t>(m + 1));

        auto emit = [&](const Face& g, Provenance p) {
            auto verts = next.vertex_list(g);
            if (!builder.add(verts)) {
                throw std::logic_error(std::string("maps A-E are not disjoint: ") + map_name(p.kind) +
                                       " of face #" + std::to_string(p.source) + " of Delta_" +
                                       std::to_string(m) + " repeats " + g.to_string());
            }
            generated.emplace_back(std::move(verts), p);
        };

        for (std::size_t s = 0; s < prev.complex.size(); ++s) {
            const Face f = prev.face_at(s);
            emit(map_A(f), {MapKind::A, s, 0, 0});
            emit(map_B(f), {MapKind::B, s, 0, 0});
            for (Mask block : f.masks()) {
                emit(map_C(f, block), {MapKind::C, s, block, 0});
                emit(map_D(f, block), {MapKind::D, s, block, 0});
            }
            for (int i = 2; i <= m; ++i) emit(map_E(f, i), {MapKind::E, s, 0, i});
        }

        next.complex = std::move(builder).build(true);
        std::vector<Provenance> provenance(next.complex.size());
        for (const auto& [verts, p] : generated) provenance[*next.complex.find_global(verts)] = p;
        out.levels.push_back(Level{std::move(next), std::move(provenance)});
    }
    return out;
}

// ---------------------------------------------------------------- forests

Forest forest_of(const Face& f) {
    Forest forest;
    forest.n = f.n();
    const auto masks = f.masks();
    const int k = static_cast<int>(masks.size());
    forest.nodes.resize(k);
    for (int a = 0; a < k; ++a) {
        forest.nodes[a].block = masks[a];
        // parent: the smallest block strictly containing this one
        int best = -1;
        for (int b = 0; b < k; ++b) {
            if (b == a || (masks[b] & masks[a]) != masks[a]) continue;
            if (best < 0 || std::popcount(masks[b]) < std::popcount(masks[best])) best = b;
        }
        forest.nodes[a].parent = best;
    }
    for (int a = 0; a < k; ++a) {
        if (forest.nodes[a].parent < 0) forest.top_nodes.push_back(a);
        else forest.nodes[forest.nodes[a].parent].child_nodes.push_back(a);
    }
    forest.leaf_parent.assign(f.n() + 1, -1);
    for (int leaf = 2; leaf <= f.n(); ++leaf) {
        int best = -1;
        for (int b = 0; b < k; ++b) {
            if (!(masks[b] & bit(leaf))) continue;
            if (best < 0 || std::popcount(masks[b]) < std::popcount(masks[best])) best = b;
        }
        forest.leaf_parent[leaf] = best;
        if (best < 0) forest.top_leaves.push_back(leaf);
        else forest.nodes[best].child_leaves.push_back(leaf);
    }
    return forest;
}

std::string forest_dot(const Forest& forest) {
    std::ostringstream out;
    out << "digraph forest {\n  node [shape=ellipse, fontsize=10];\n";
    for (std::size_t a = 0; a < forest.nodes.size(); ++a) {
        out << "  t" << a << " [label=\"" << mask_members(forest.nodes[a].block) << "\"];\n";
    }
    out << "  { rank=sink;";
    for (int leaf = 2; leaf <= forest.n; ++leaf) out << " l" << leaf << ';';
    out << " }\n";
    for (int leaf = 2; leaf <= forest.n; ++leaf) {
        out << "  l" << leaf << " [shape=plaintext, label=\"" << leaf << "\"];\n";
    }
    for (std::size_t a = 0; a < forest.nodes.size(); ++a) {
        for (int c : forest.nodes[a].child_nodes) out << "  t" << a << " -> t" << c << ";\n";
        for (int leaf : forest.nodes[a].child_leaves) out << "  t" << a << " -> l" << leaf << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::vector<int> link_decomposition(const Face& f) {
    const Forest forest = forest_of(f);
    std::vector<int> out{forest.components() + 1};
    for (const auto& node : forest.nodes) out.push_back(node.child_count() + 1);
    return out;
}

std::vector<int> link_signature(const Face& f) {
    auto sig = link_decomposition(f);
    std::sort(sig.begin(), sig.end(), std::greater<>());
    return sig;
}

bool verify_link_decomposition(const WhitehouseComplex& k, const Face& f) {
    const auto face_verts = k.vertex_list(f);
    if (!k.complex.contains(face_verts)) return false;
    const Subcomplex lk = link(k.complex, face_verts);
    const Forest forest = forest_of(f);

    // slot 0 is the top level, slot j+1 is block j; children ordered by least element
    const int slots = static_cast<int>(forest.nodes.size()) + 1;
    std::vector<std::vector<Mask>> children(slots);
    for (int a : forest.top_nodes) children[0].push_back(forest.nodes[a].block);
    for (int leaf : forest.top_leaves) children[0].push_back(bit(leaf));
    for (std::size_t a = 0; a < forest.nodes.size(); ++a) {
        for (int c : forest.nodes[a].child_nodes) children[a + 1].push_back(forest.nodes[c].block);
        for (int leaf : forest.nodes[a].child_leaves) children[a + 1].push_back(bit(leaf));
    }
    for (auto& ch : children) {
        std::sort(ch.begin(), ch.end(),
                  [](Mask x, Mask y) { return lowest_element(x) < lowest_element(y); });
    }

    std::map<int, WhitehouseComplex> cache;
    std::vector<const WhitehouseComplex*> factors;
    std::vector<SimplicialComplex> factor_complexes;
    std::vector<Vertex> offsets;
    Vertex offset = 0;
    for (int s = 0; s < slots; ++s) {
        const int m = static_cast<int>(children[s].size()) + 1;
        auto it = cache.find(m);
        if (it == cache.end()) it = cache.emplace(m, build_direct(m)).first;
        factors.push_back(&it->second);
        factor_complexes.push_back(it->second.complex);
        offsets.push_back(offset);
        offset += static_cast<Vertex>(it->second.vertices.size());
    }
    const SimplicialComplex joined = join_all(factor_complexes);
    if (joined.size() != lk.complex.size()) return false;

    const auto masks = f.masks();
    std::vector<Vertex> image(lk.complex.vertex_count());
    std::vector<char> hit(joined.vertex_count(), 0);
    for (Vertex v = 0; v < lk.complex.vertex_count(); ++v) {
        const Mask vm = k.vertices[lk.to_parent[v]].mask();
        int slot = 0;
        for (std::size_t b = 0; b < masks.size(); ++b) {
            if ((masks[b] & vm) != vm || masks[b] == vm) continue;
            if (slot == 0 || std::popcount(masks[b]) < std::popcount(masks[slot - 1])) {
                slot = static_cast<int>(b) + 1;
            }
        }
        Mask local = 0;
        Mask covered = 0;
        for (std::size_t c = 0; c < children[slot].size(); ++c) {
            if ((children[slot][c] & vm) == children[slot][c]) {
                local |= bit(static_cast<int>(c) + 2);
                covered |= children[slot][c];
            }
        }
        if (covered != vm) return false;
        const WhitehouseComplex& factor = *factors[slot];
        if (!is_vertex_mask(factor.n, local)) return false;
        const Vertex target = offsets[slot] + static_cast<Vertex>(factor.vertex_of_mask[local]);
        if (hit[target]) return false;
        hit[target] = 1;
        image[v] = target;
    }
    std::vector<Vertex> mapped;
    for (int dim = -1; dim <= lk.complex.dimension(); ++dim) {
        for (std::size_t id = 0; id < lk.complex.face_count(dim); ++id) {
            mapped.clear();
            for (Vertex v : lk.complex.face(dim, id)) mapped.push_back(image[v]);
            std::sort(mapped.begin(), mapped.end());
            if (!joined.contains(mapped)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- recurrences

FVector f_recurrence(int n) {
    if (n < 3) throw std::invalid_argument("f_recurrence needs n >= 3");
    std::vector<std::int64_t> f{1};  // Delta_3: f_{-1} = 1
    for (int m = 4; m <= n; ++m) {
        auto prev = [&](int i) -> std::int64_t {
            return (i + 1 >= 0 && i + 1 < static_cast<int>(f.size())) ? f[i + 1] : 0;
        };
        std::vector<std::int64_t> next;
        for (int i = -1; i <= m - 4; ++i) next.push_back((i + 2) * prev(i) + (m + i - 1) * prev(i - 1));
        f = std::move(next);
    }
    return FVector{f};
}

HVector h_recurrence(int n) {
    if (n < 3) throw std::invalid_argument("h_recurrence needs n >= 3");
    std::vector<std::int64_t> h{1};
    for (int m = 4; m <= n; ++m) {
        auto prev = [&](int k) -> std::int64_t {
            return (k >= 0 && k < static_cast<int>(h.size())) ? h[k] : 0;
        };
        std::vector<std::int64_t> next;
        for (int k = 0; k <= m - 3; ++k) next.push_back((k + 1) * prev(k) + (2 * m - k - 5) * prev(k - 1));
        h = std::move(next);
    }
    return HVector{h};
}

std::int64_t double_factorial(int m) {
    std::int64_t r = 1;
    for (int k = m; k > 1; k -= 2) r *= k;
    return r;
}

std::int64_t factorial(int m) {
    std::int64_t r = 1;
    for (int k = 2; k <= m; ++k) r *= k;
    return r;
}

}  // namespace whitehouse
