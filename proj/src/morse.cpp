#include "whitehouse/morse.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace whitehouse {

std::vector<std::pair<std::size_t, std::size_t>> MorseMatching::pairs(const FacePoset& p) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < partner.size(); ++x) {
        if (partner[x] < 0) continue;
        const auto y = static_cast<std::size_t>(partner[x]);
        if (p.rank[x] < p.rank[y]) out.emplace_back(x, y);
    }
    return out;
}

std::vector<std::size_t> MorseMatching::critical(const FacePoset& p) const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < partner.size(); ++x) {
        if (p.contains(x) && partner[x] < 0) out.push_back(x);
    }
    return out;
}

void check_matching(const FacePoset& p, const MorseMatching& m) {
    if (m.partner.size() != p.rank.size()) {
        throw std::invalid_argument("matching size " + std::to_string(m.partner.size()) +
                                    " does not match the poset size " + std::to_string(p.rank.size()));
    }
    for (std::size_t x = 0; x < m.partner.size(); ++x) {
        if (m.partner[x] < 0) continue;
        const auto y = static_cast<std::size_t>(m.partner[x]);
        if (y >= m.partner.size() || !p.contains(x) || !p.contains(y)) {
            throw std::invalid_argument("element " + std::to_string(x) + " matched outside the poset");
        }
        if (m.partner[y] != static_cast<std::int64_t>(x)) {
            throw std::invalid_argument("element " + std::to_string(y) + " appears in two pairs");
        }
        const std::size_t upper = p.rank[x] > p.rank[y] ? x : y;
        const std::size_t lower = upper == x ? y : x;
        auto covers = p.covers_below(upper);
        if (p.rank[upper] != p.rank[lower] + 1 ||
            std::find(covers.begin(), covers.end(), lower) == covers.end()) {
            throw std::invalid_argument("pair (" + std::to_string(lower) + ", " +
                                        std::to_string(upper) + ") is not a cover relation");
        }
    }
}

AcyclicityReport verify_acyclic(const FacePoset& p, const MorseMatching& m) {
    check_matching(p, m);
    AcyclicityReport report;
    const std::size_t total = p.rank.size();
    const int top_rank = total ? *std::max_element(p.rank.begin(), p.rank.end()) : 0;

    std::vector<std::int64_t> local(total, -1);
    for (int r = 0; r < top_rank; ++r) {
        // nodes: pairs between rank r and rank r+1
        std::vector<std::size_t> nodes;
        for (std::size_t x = 0; x < total; ++x) {
            if (m.partner[x] < 0) continue;
            const auto y = static_cast<std::size_t>(m.partner[x]);
            if ((p.rank[x] == r && p.rank[y] == r + 1) || (p.rank[x] == r + 1 && p.rank[y] == r)) {
                local[x] = static_cast<std::int64_t>(nodes.size());
                nodes.push_back(x);
            }
        }
        if (nodes.empty()) continue;

        std::vector<std::vector<std::size_t>> out(nodes.size());
        std::vector<std::vector<std::size_t>> in(nodes.size());
        for (std::size_t a = 0; a < nodes.size(); ++a) {
            const std::size_t x = nodes[a];
            const auto partner = static_cast<std::size_t>(m.partner[x]);
            if (p.rank[x] == r) {
                out[a].push_back(static_cast<std::size_t>(local[partner]));  // matched edge, upward
            } else {
                for (std::size_t c : p.covers_below(x)) {
                    if (c != partner && local[c] >= 0) out[a].push_back(static_cast<std::size_t>(local[c]));
                }
            }
        }
        for (std::size_t a = 0; a < nodes.size(); ++a) {
            for (std::size_t b : out[a]) in[b].push_back(a);
        }

        // Kahn's algorithm
        std::vector<std::size_t> indegree(nodes.size());
        std::vector<std::size_t> stack;
        for (std::size_t a = 0; a < nodes.size(); ++a) {
            indegree[a] = in[a].size();
            if (indegree[a] == 0) stack.push_back(a);
        }
        std::size_t removed = 0;
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            ++removed;
            for (std::size_t b : out[a]) {
                if (--indegree[b] == 0) stack.push_back(b);
            }
        }

        if (removed != nodes.size() && report.acyclic) {
            // every remaining node has a remaining predecessor; walk back until a repeat
            std::size_t start = 0;
            while (indegree[start] == 0) ++start;
            std::vector<std::int64_t> seen_at(nodes.size(), -1);
            std::vector<std::size_t> walk;
            std::size_t cur = start;
            while (seen_at[cur] < 0) {
                seen_at[cur] = static_cast<std::int64_t>(walk.size());
                walk.push_back(cur);
                for (std::size_t pred : in[cur]) {
                    if (indegree[pred] > 0) {
                        cur = pred;
                        break;
                    }
                }
            }
            std::vector<std::size_t> cycle(walk.begin() + seen_at[cur], walk.end());
            std::reverse(cycle.begin(), cycle.end());  // predecessor walk runs against the edges
            report.acyclic = false;
            for (std::size_t a : cycle) report.cycle.push_back(nodes[a]);
        }
        for (std::size_t x : nodes) local[x] = -1;
        if (!report.acyclic) break;
    }
    return report;
}

std::map<int, std::size_t> critical_census(const FacePoset& p, const MorseMatching& m) {
    std::map<int, std::size_t> census;
    for (std::size_t x : m.critical(p)) ++census[p.rank[x] - 1];
    return census;
}

// ---------------------------------------------------------------- construction

namespace {

std::uint64_t block_key(std::size_t source, Mask block) {
    return (static_cast<std::uint64_t>(source) << 32) | block;
}

// Vertex relabeling Delta_m -> Delta_{m+1} used by E(., i), plus the new vertex {i, m+1}.
struct ERelabel {
    std::vector<Vertex> image;
    Vertex fused;
};

ERelabel e_relabel(const WhitehouseComplex& from, const WhitehouseComplex& to, int i) {
    const int m = from.n;
    const Mask added = Mask{1} << (m + 1);
    ERelabel r;
    for (const auto& v : from.vertices) {
        const Mask mask = v.contains(i) ? v.mask() | added : v.mask();
        r.image.push_back(static_cast<Vertex>(to.vertex_of_mask[mask]));
    }
    r.fused = static_cast<Vertex>(to.vertex_of_mask[(Mask{1} << i) | added]);
    return r;
}

}  // namespace

MorseMatching build_matching(const RecursiveBuild& build) {
    MorseMatching current;
    current.partner.assign(1, -1);  // Delta_3: the empty face is critical

    for (std::size_t lvl = 1; lvl < build.levels.size(); ++lvl) {
        const Level& prev = build.levels[lvl - 1];
        const Level& next = build.levels[lvl];
        const std::size_t total = next.complex.complex.size();

        std::vector<std::int64_t> image_a(prev.complex.complex.size(), -1);
        std::vector<std::int64_t> image_b(prev.complex.complex.size(), -1);
        std::unordered_map<std::uint64_t, std::size_t> image_d;
        for (std::size_t g = 0; g < total; ++g) {
            const Provenance& pv = next.provenance[g];
            if (pv.kind == MapKind::A) image_a[pv.source] = static_cast<std::int64_t>(g);
            if (pv.kind == MapKind::B) image_b[pv.source] = static_cast<std::int64_t>(g);
            if (pv.kind == MapKind::D) image_d[block_key(pv.source, pv.block)] = g;
        }

        std::vector<ERelabel> relabel;
        for (int i = 2; i <= prev.complex.n; ++i) {
            relabel.push_back(e_relabel(prev.complex, next.complex, i));
        }

        MorseMatching matched;
        matched.partner.assign(total, -1);
        std::vector<Vertex> mapped;
        for (std::size_t g = 0; g < total; ++g) {
            const Provenance& pv = next.provenance[g];
            switch (pv.kind) {
                case MapKind::A: {
                    const auto b = static_cast<std::size_t>(image_b[pv.source]);
                    matched.partner[g] = static_cast<std::int64_t>(b);
                    matched.partner[b] = static_cast<std::int64_t>(g);
                    break;
                }
                case MapKind::C: {
                    const std::size_t d = image_d.at(block_key(pv.source, pv.block));
                    matched.partner[g] = static_cast<std::int64_t>(d);
                    matched.partner[d] = static_cast<std::int64_t>(g);
                    break;
                }
                case MapKind::E: {
                    const std::int64_t below = current.partner[pv.source];
                    if (below < 0) break;  // critical in the copy
                    const ERelabel& r = relabel[pv.element - 2];
                    auto [dim, id] = prev.complex.complex.locate(static_cast<std::size_t>(below));
                    mapped.clear();
                    for (Vertex v : prev.complex.complex.face(dim, id)) mapped.push_back(r.image[v]);
                    mapped.push_back(r.fused);
                    std::sort(mapped.begin(), mapped.end());
                    auto target = next.complex.complex.find_global(mapped);
                    if (!target) throw std::logic_error("E-copy relabeling left Delta_n");
                    const Provenance& tp = next.provenance[*target];
                    if (tp.kind != MapKind::E || tp.element != pv.element ||
                        tp.source != static_cast<std::size_t>(below)) {
                        throw std::logic_error("E-copy relabeling disagrees with provenance");
                    }
                    matched.partner[g] = static_cast<std::int64_t>(*target);
                    break;
                }
                case MapKind::B:
                case MapKind::D:
                    break;  // set from their A / C partner
            }
        }
        current = std::move(matched);
    }
    return current;
}

MorseMatching build_matching(int n) { return build_matching(build_recursive(n)); }

AbcdPart abcd_part(const Level& level) {
    const auto& k = level.complex.complex;
    AbcdPart part;
    part.in_q.assign(k.size(), 0);
    part.matching.partner.assign(k.size(), -1);
    if (level.provenance.empty()) {
        // Delta_3 has no maps into it
        part.complex = SimplicialComplex(level.complex.vertices.size());
        return part;
    }
    std::unordered_map<std::uint64_t, std::size_t> image_b;
    std::unordered_map<std::uint64_t, std::size_t> image_d;
    for (std::size_t g = 0; g < k.size(); ++g) {
        const auto& pv = level.provenance[g];
        part.in_q[g] = pv.kind != MapKind::E;
        if (pv.kind == MapKind::B) image_b[pv.source] = g;
        if (pv.kind == MapKind::D) image_d[block_key(pv.source, pv.block)] = g;
    }
    ComplexBuilder builder(k.vertex_count());
    for (std::size_t g = 0; g < k.size(); ++g) {
        const auto& pv = level.provenance[g];
        std::size_t other = g;
        if (pv.kind == MapKind::A) other = image_b.at(pv.source);
        if (pv.kind == MapKind::C) other = image_d.at(block_key(pv.source, pv.block));
        if (other != g) {
            part.matching.partner[g] = static_cast<std::int64_t>(other);
            part.matching.partner[other] = static_cast<std::int64_t>(g);
        }
        if (part.in_q[g]) {
            auto [dim, id] = k.locate(g);
            auto f = k.face(dim, id);
            builder.add(std::vector<Vertex>(f.begin(), f.end()));
        }
    }
    part.complex = std::move(builder).build(true);
    return part;
}

bool check_order_ideals(const Level& level) {
    if (level.provenance.empty()) return true;
    const FacePoset p = face_poset(level.complex.complex, true);
    for (std::size_t g = 0; g < p.rank.size(); ++g) {
        const auto& pv = level.provenance[g];
        for (std::size_t c : p.covers_below(g)) {
            const auto& pc = level.provenance[c];
            // Q is closed downward
            if (pv.kind != MapKind::E && pc.kind == MapKind::E) return false;
            // each E(., i) image is closed upward
            if (pc.kind == MapKind::E && (pv.kind != MapKind::E || pv.element != pc.element)) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- critical cells

bool is_iterated_e_image(const Face& f) {
    std::vector<Mask> blocks(f.masks().begin(), f.masks().end());
    for (int m = f.n(); m > 3; --m) {
        const Mask top = Mask{1} << m;
        auto cherry = std::find_if(blocks.begin(), blocks.end(),
                                   [&](Mask b) { return (b & top) && std::popcount(b) == 2; });
        if (cherry == blocks.end()) return false;
        blocks.erase(cherry);
        for (Mask& b : blocks) b &= ~top;
    }
    return blocks.empty();
}

namespace {

bool is_nested_chain(const Face& f) {
    auto masks = f.masks();
    for (std::size_t a = 1; a < masks.size(); ++a) {
        if ((masks[a] & masks[a - 1]) != masks[a - 1]) return false;
    }
    return true;
}

}  // namespace

CriticalCharacterization characterize_critical(int n) {
    const RecursiveBuild build = build_recursive(n);
    const Level& top = build.top();
    const MorseMatching m = build_matching(build);
    const FacePoset p = face_poset(top.complex.complex, true);

    CriticalCharacterization out;
    out.n = n;
    out.expected_count = static_cast<std::size_t>(factorial(n - 2));
    const int top_dim = top.complex.complex.dimension();
    for (std::size_t g : m.critical(p)) {
        ++out.critical_count;
        const Face f = top.complex.face_at(g);
        if (f.dimension() != top_dim || f.dimension() != n - 4) out.all_facets = false;
        if (!is_iterated_e_image(f)) out.all_iterated_e = false;
        if (is_nested_chain(f)) ++out.nested_chains;
    }
    return out;
}

// ---------------------------------------------------------------- export

namespace {

nlohmann::json face_blocks(const Face& f) {
    auto arr = nlohmann::json::array();
    for (const auto& b : f.blocks()) arr.push_back(b.members());
    return arr;
}

}  // namespace

nlohmann::json matching_to_json(const WhitehouseComplex& k, const FacePoset& p, const MorseMatching& m) {
    nlohmann::json j;
    j["n"] = k.n;
    auto pairs = nlohmann::json::array();
    for (const auto& [lower, upper] : m.pairs(p)) {
        pairs.push_back(nlohmann::json::array({face_blocks(k.face_at(lower)), face_blocks(k.face_at(upper))}));
    }
    j["pairs"] = std::move(pairs);
    auto critical = nlohmann::json::array();
    for (std::size_t x : m.critical(p)) critical.push_back(face_blocks(k.face_at(x)));
    j["critical"] = std::move(critical);
    return j;
}

std::string matching_dot(const WhitehouseComplex& k, const FacePoset& p, const MorseMatching& m) {
    std::ostringstream out;
    out << "digraph morse {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
    for (std::size_t g = 0; g < p.rank.size(); ++g) {
        if (!p.contains(g)) continue;
        out << "  f" << g << " [label=\"" << k.face_at(g).to_string() << "\""
            << (m.is_critical(g) ? ", style=filled, fillcolor=gold" : "") << "];\n";
    }
    for (std::size_t g = 0; g < p.rank.size(); ++g) {
        for (std::size_t c : p.covers_below(g)) {
            if (m.partner[c] == static_cast<std::int64_t>(g)) {
                out << "  f" << c << " -> f" << g << " [color=red, penwidth=2];\n";
            } else {
                out << "  f" << g << " -> f" << c << ";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace whitehouse
