// Brute-force reference implementations. They work on plain std::set data
// and share no code with the library.
#ifndef WHITEHOUSE_TESTS_ORACLES_HPP
#define WHITEHOUSE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "whitehouse/complex.hpp"
#include "whitehouse/morse.hpp"
#include "whitehouse/whitehouse.hpp"

namespace oracle {

using Set = std::set<int>;
using Family = std::set<Set>;

inline bool subset(const Set& a, const Set& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool disjoint(const Set& a, const Set& b) {
    for (int x : a) {
        if (b.count(x)) return false;
    }
    return true;
}

inline bool laminar_pair(const Set& a, const Set& b) {
    return disjoint(a, b) || subset(a, b) || subset(b, a);
}

// Subsets S of {2..n} with 2 <= |S| <= n-2.
inline std::vector<Set> vertices(int n) {
    std::vector<Set> out;
    const int m = n - 1;
    for (int bits = 0; bits < (1 << m); ++bits) {
        Set s;
        for (int j = 0; j < m; ++j) {
            if (bits & (1 << j)) s.insert(j + 2);
        }
        if (static_cast<int>(s.size()) >= 2 && static_cast<int>(s.size()) <= n - 2) out.push_back(s);
    }
    return out;
}

// Number of distinct nonempty pairwise intersections of two 2-partitions of {1..n}.
inline int a_value(int n, const Set& s, const Set& t) {
    Set all;
    for (int i = 1; i <= n; ++i) all.insert(i);
    auto complement = [&](const Set& x) {
        Set c;
        std::set_difference(all.begin(), all.end(), x.begin(), x.end(), std::inserter(c, c.end()));
        return c;
    };
    const Set sc = complement(s), tc = complement(t);
    std::set<Set> parts;
    for (const Set* a : {&s, &sc}) {
        for (const Set* b : {&t, &tc}) {
            Set x;
            std::set_intersection(a->begin(), a->end(), b->begin(), b->end(), std::inserter(x, x.end()));
            if (!x.empty()) parts.insert(x);
        }
    }
    return static_cast<int>(parts.size());
}

// Every pairwise-laminar family of vertices.
inline std::set<Family> faces(int n) {
    const auto v = vertices(n);
    std::set<Family> out;
    std::vector<int> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        Family f;
        for (int i : chosen) f.insert(v[i]);
        out.insert(f);
        for (std::size_t j = start; j < v.size(); ++j) {
            bool ok = true;
            for (int i : chosen) ok = ok && laminar_pair(v[i], v[j]);
            if (!ok) continue;
            chosen.push_back(static_cast<int>(j));
            rec(j + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return out;
}

inline Family family_of(const whitehouse::Face& f) {
    Family out;
    for (const auto& b : f.blocks()) {
        auto m = b.members();
        out.insert(Set(m.begin(), m.end()));
    }
    return out;
}

inline std::set<Family> faces_of(const whitehouse::WhitehouseComplex& w) {
    std::set<Family> out;
    for (std::size_t g = 0; g < w.complex.size(); ++g) out.insert(family_of(w.face_at(g)));
    return out;
}

// Cycle search on the whole modified Hasse digraph: unmatched covers point
// down, matched covers point up.
inline bool has_cycle(const whitehouse::FacePoset& p, const whitehouse::MorseMatching& m) {
    const std::size_t count = p.rank.size();
    std::vector<std::vector<std::size_t>> adj(count);
    for (std::size_t x = 0; x < count; ++x) {
        if (!p.contains(x)) continue;
        for (std::size_t y : p.covers_below(x)) {
            if (!p.contains(y)) continue;
            if (m.partner[x] == static_cast<std::int64_t>(y)) adj[y].push_back(x);
            else adj[x].push_back(y);
        }
    }
    std::vector<int> colour(count, 0);
    for (std::size_t s = 0; s < count; ++s) {
        if (colour[s]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
        colour[s] = 1;
        while (!stack.empty()) {
            auto& [x, i] = stack.back();
            if (i == adj[x].size()) {
                colour[x] = 2;
                stack.pop_back();
                continue;
            }
            const std::size_t y = adj[x][i++];
            if (colour[y] == 1) return true;
            if (colour[y] == 0) {
                colour[y] = 1;
                stack.push_back({y, 0});
            }
        }
    }
    return false;
}

// Rank over Z/p by dense Gaussian elimination.
inline std::size_t dense_rank(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
    auto power = [p](std::int64_t b, std::int64_t e) {
        std::int64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (auto& row : a) {
        for (auto& x : row) x = ((x % p) + p) % p;
    }
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        const std::int64_t inv = power(a[rank][c], p - 2);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            const std::int64_t factor = a[r][c] * inv % p;
            for (std::size_t k = c; k < cols; ++k) a[r][k] = ((a[r][k] - factor * a[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

// Reduced Betti numbers over Z/p from dense boundary matrices built here.
inline std::vector<std::int64_t> reduced_betti(const whitehouse::SimplicialComplex& k, std::int64_t p = 1000003) {
    const int dim = k.dimension();
    std::vector<std::size_t> rank(dim + 2, 0);  // rank[j] = rank of boundary from dim j-1 to j-2
    for (int d = 0; d <= dim; ++d) {
        std::vector<std::vector<std::int64_t>> m(k.face_count(d - 1), std::vector<std::int64_t>(k.face_count(d), 0));
        for (std::size_t c = 0; c < k.face_count(d); ++c) {
            auto f = k.face(d, c);
            std::vector<whitehouse::Vertex> face(f.begin(), f.end());
            for (std::size_t drop = 0; drop < face.size(); ++drop) {
                std::vector<whitehouse::Vertex> g = face;
                g.erase(g.begin() + static_cast<std::ptrdiff_t>(drop));
                m[*k.find(g)][c] = drop % 2 ? -1 : 1;
            }
        }
        rank[d + 1] = dense_rank(m, p);
    }
    std::vector<std::int64_t> betti;
    for (int d = -1; d <= dim; ++d) {
        const std::int64_t cycles = static_cast<std::int64_t>(k.face_count(d)) - static_cast<std::int64_t>(rank[d + 1]);
        const std::int64_t boundaries = d + 2 <= dim + 1 ? static_cast<std::int64_t>(rank[d + 2]) : 0;
        betti.push_back(cycles - boundaries);
    }
    return betti;  // betti[0] is degree -1
}

// Monomials of degree `degree` in the vertices whose support is a face.
inline std::int64_t count_monomials(int n, int degree) {
    const auto v = vertices(n);
    std::int64_t count = 0;
    std::vector<int> seq;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(seq.size()) == degree) {
            for (std::size_t i = 0; i < seq.size(); ++i) {
                for (std::size_t j = i + 1; j < seq.size(); ++j) {
                    if (!laminar_pair(v[seq[i]], v[seq[j]])) return;
                }
            }
            ++count;
            return;
        }
        for (std::size_t j = start; j < v.size(); ++j) {
            seq.push_back(static_cast<int>(j));
            rec(j);
            seq.pop_back();
        }
    };
    rec(0);
    return count;
}

}  // namespace oracle

#endif  // WHITEHOUSE_TESTS_ORACLES_HPP
