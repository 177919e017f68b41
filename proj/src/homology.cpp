#include "whitehouse/homology.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace whitehouse {

// ---------------------------------------------------------------- sparse matrices

std::size_t SparseMatrix::nonzeros() const {
    std::size_t nnz = 0;
    for (const auto& c : columns) nnz += c.size();
    return nnz;
}

std::int64_t SparseMatrix::at(std::size_t r, std::size_t c) const {
    const auto& col = columns.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), Entry{static_cast<std::uint32_t>(r), 0},
                               [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return (it != col.end() && it->first == r) ? it->second : 0;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix shapes do not compose");
    SparseMatrix out(a.rows, b.cols);
    std::vector<std::int64_t> acc(a.rows, 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t j = 0; j < b.cols; ++j) {
        touched.clear();
        for (const auto& [k, bv] : b.columns[j]) {
            for (const auto& [i, av] : a.columns[k]) {
                if (acc[i] == 0) touched.push_back(i);
                acc[i] += av * bv;
            }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (std::uint32_t i : touched) {
            if (acc[i] != 0) out.columns[j].emplace_back(i, acc[i]);
            acc[i] = 0;
        }
    }
    return out;
}

void write_triplets(std::ostream& out, const SparseMatrix& m) {
    out << m.rows << ' ' << m.cols << ' ' << m.nonzeros() << '\n';
    for (std::size_t c = 0; c < m.cols; ++c) {
        for (const auto& [r, v] : m.columns[c]) out << r << ' ' << c << ' ' << v << '\n';
    }
}

SparseMatrix read_triplets(std::istream& in) {
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (!(in >> rows >> cols >> nnz)) throw std::invalid_argument("bad triplet header");
    SparseMatrix m(rows, cols);
    for (std::size_t e = 0; e < nnz; ++e) {
        std::size_t r = 0, c = 0;
        std::int64_t v = 0;
        if (!(in >> r >> c >> v) || r >= rows || c >= cols) {
            throw std::invalid_argument("bad triplet entry " + std::to_string(e));
        }
        if (v != 0) m.columns[c].emplace_back(static_cast<std::uint32_t>(r), v);
    }
    for (auto& col : m.columns) std::sort(col.begin(), col.end());
    return m;
}

ChainBoundary boundary_matrices(const SimplicialComplex& k) {
    ChainBoundary c;
    std::vector<Vertex> sub;
    for (int dim = 0; dim <= k.dimension(); ++dim) {
        SparseMatrix d(k.face_count(dim - 1), k.face_count(dim));
        for (std::size_t id = 0; id < k.face_count(dim); ++id) {
            auto f = k.face(dim, id);
            auto& col = d.columns[id];
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                sub.clear();
                for (std::size_t j = 0; j < f.size(); ++j) {
                    if (j != drop) sub.push_back(f[j]);
                }
                col.emplace_back(static_cast<std::uint32_t>(*k.find(sub)), drop % 2 == 0 ? 1 : -1);
            }
            std::sort(col.begin(), col.end());
        }
        c.d.push_back(std::move(d));
    }
    return c;
}

// ---------------------------------------------------------------- ranks over Z/p

namespace {

using ModEntry = std::pair<std::uint32_t, std::uint32_t>;
using ModColumn = std::vector<ModEntry>;

std::uint32_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

ModColumn to_mod(const std::vector<SparseMatrix::Entry>& col, std::uint32_t p) {
    ModColumn out;
    out.reserve(col.size());
    for (const auto& [r, v] : col) {
        std::int64_t m = v % static_cast<std::int64_t>(p);
        if (m < 0) m += p;
        if (m != 0) out.emplace_back(r, static_cast<std::uint32_t>(m));
    }
    return out;
}

// a -= factor * b
void axpy(ModColumn& a, const ModColumn& b, std::uint32_t factor, std::uint32_t p, ModColumn& scratch) {
    scratch.clear();
    const std::uint64_t neg = p - factor;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            scratch.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            scratch.emplace_back(b[j].first, static_cast<std::uint32_t>(neg * b[j].second % p));
            ++j;
        } else {
            const auto v = static_cast<std::uint32_t>((a[i].second + neg * b[j].second) % p);
            if (v != 0) scratch.emplace_back(a[i].first, v);
            ++i;
            ++j;
        }
    }
    a.swap(scratch);
}

// Standard column reduction (pivot = lowest row). Returns pivot rows of
// the nonzero reduced columns.
std::vector<std::uint32_t> reduce_mod_p(const SparseMatrix& m, std::uint32_t p,
                                        const std::vector<char>* cleared) {
    std::vector<ModColumn> reduced(m.cols);
    std::vector<std::int64_t> pivot_col(m.rows, -1);
    std::vector<std::uint32_t> pivots;
    ModColumn col, scratch;
    for (std::size_t j = 0; j < m.cols; ++j) {
        if (cleared && (*cleared)[j]) continue;
        col = to_mod(m.columns[j], p);
        while (!col.empty()) {
            const auto [low, val] = col.back();
            const std::int64_t pc = pivot_col[low];
            if (pc < 0) break;
            axpy(col, reduced[pc], val, p, scratch);
        }
        if (col.empty()) continue;
        const std::uint32_t inv = mod_pow(col.back().second, p - 2, p);
        for (auto& e : col) e.second = static_cast<std::uint32_t>(std::uint64_t{e.second} * inv % p);
        pivot_col[col.back().first] = static_cast<std::int64_t>(j);
        pivots.push_back(col.back().first);
        reduced[j] = std::move(col);
        col = {};
    }
    return pivots;
}

}  // namespace

std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p) {
    return reduce_mod_p(m, p, nullptr).size();
}

std::vector<std::size_t> boundary_ranks_mod_p(const ChainBoundary& c, std::uint32_t p) {
    std::vector<std::size_t> ranks(c.d.size(), 0);
    std::vector<char> cleared;
    for (std::size_t k = c.d.size(); k-- > 0;) {
        const SparseMatrix& d = c.d[k];
        if (cleared.size() != d.cols) cleared.assign(d.cols, 0);
        auto pivots = reduce_mod_p(d, p, &cleared);
        ranks[k] = pivots.size();
        // a k-face that is a pivot row here has a column in d[k-1] that reduces to zero
        cleared.assign(d.rows, 0);
        for (std::uint32_t r : pivots) cleared[r] = 1;
    }
    return ranks;
}

// ---------------------------------------------------------------- Smith normal form

std::vector<BigInt> smith_diagonal_dense(std::vector<std::vector<BigInt>> a) {
    std::vector<BigInt> diag;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        for (auto& row : a) std::swap(row[x], row[y]);
    };
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // smallest nonzero entry of the remaining block becomes the pivot
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i) {
            for (std::size_t j = t; j < cols; ++j) {
                if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi == rows) break;
        std::swap(a[t], a[pi]);
        swap_cols(t, pj);

        for (;;) {
            bool changed = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                const BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    changed = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                const BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    swap_cols(t, j);
                    changed = true;
                }
            }
            if (changed) continue;
            // the pivot must divide everything left, else fold a row in and retry
            bool divisible = true;
            for (std::size_t i = t + 1; i < rows && divisible; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                        divisible = false;
                        break;
                    }
                }
            }
            if (divisible) break;
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

std::vector<BigInt> smith_diagonal(const SparseMatrix& m) {
    // rows[r]: (col, value) sorted; col_rows[c]: rows with a nonzero in column c
    std::vector<std::vector<SparseMatrix::Entry>> rows(m.rows);
    std::vector<std::vector<std::uint32_t>> col_rows(m.cols);
    for (std::size_t c = 0; c < m.cols; ++c) {
        for (const auto& [r, v] : m.columns[c]) {
            rows[r].emplace_back(static_cast<std::uint32_t>(c), v);
            col_rows[c].push_back(r);
        }
    }
    auto erase_from = [](std::vector<std::uint32_t>& v, std::uint32_t x) {
        auto it = std::find(v.begin(), v.end(), x);
        if (it != v.end()) {
            *it = v.back();
            v.pop_back();
        }
    };

    std::size_t units = 0;
    std::vector<SparseMatrix::Entry> scratch;
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (col_rows[c].empty()) continue;
            // unit entry in the shortest row
            std::int64_t pr = -1;
            std::int64_t unit = 0;
            for (std::uint32_t r : col_rows[c]) {
                auto it = std::lower_bound(rows[r].begin(), rows[r].end(),
                                           SparseMatrix::Entry{static_cast<std::uint32_t>(c), 0},
                                           [](const auto& a, const auto& b) { return a.first < b.first; });
                if ((it->second == 1 || it->second == -1) &&
                    (pr < 0 || rows[r].size() < rows[static_cast<std::size_t>(pr)].size())) {
                    pr = r;
                    unit = it->second;
                }
            }
            if (pr < 0) continue;
            progress = true;
            ++units;
            const auto pivot_row = rows[static_cast<std::size_t>(pr)];
            const std::vector<std::uint32_t> others = col_rows[c];
            for (std::uint32_t r : others) {
                if (r == pr) continue;
                auto& row = rows[r];
                auto it = std::lower_bound(row.begin(), row.end(),
                                           SparseMatrix::Entry{static_cast<std::uint32_t>(c), 0},
                                           [](const auto& a, const auto& b) { return a.first < b.first; });
                const std::int64_t factor = it->second * unit;
                // row -= factor * pivot_row
                scratch.clear();
                std::size_t i = 0, j = 0;
                while (i < row.size() || j < pivot_row.size()) {
                    if (j == pivot_row.size() || (i < row.size() && row[i].first < pivot_row[j].first)) {
                        scratch.push_back(row[i++]);
                        continue;
                    }
                    std::int64_t prod = 0, value = 0;
                    if (__builtin_mul_overflow(factor, pivot_row[j].second, &prod)) {
                        throw std::overflow_error("integer elimination overflow");
                    }
                    const std::uint32_t col = pivot_row[j].first;
                    if (i < row.size() && row[i].first == col) {
                        if (__builtin_sub_overflow(row[i].second, prod, &value)) {
                            throw std::overflow_error("integer elimination overflow");
                        }
                        ++i;
                    } else {
                        value = -prod;
                        col_rows[col].push_back(r);
                    }
                    ++j;
                    if (value != 0) scratch.emplace_back(col, value);
                    else erase_from(col_rows[col], r);
                }
                row.swap(scratch);
            }
            for (const auto& [col, v] : pivot_row) erase_from(col_rows[col], static_cast<std::uint32_t>(pr));
            rows[static_cast<std::size_t>(pr)].clear();
        }
    }

    // whatever is left has no unit entries
    std::vector<std::size_t> live_rows, live_cols;
    std::vector<std::int64_t> col_pos(m.cols, -1);
    for (std::size_t r = 0; r < m.rows; ++r) {
        if (rows[r].empty()) continue;
        live_rows.push_back(r);
        for (const auto& [c, v] : rows[r]) {
            if (col_pos[c] < 0) {
                col_pos[c] = static_cast<std::int64_t>(live_cols.size());
                live_cols.push_back(c);
            }
        }
    }
    std::vector<BigInt> diag(units, BigInt(1));
    if (!live_rows.empty()) {
        std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
        for (std::size_t i = 0; i < live_rows.size(); ++i) {
            for (const auto& [c, v] : rows[live_rows[i]]) dense[i][static_cast<std::size_t>(col_pos[c])] = v;
        }
        for (auto& d : smith_diagonal_dense(std::move(dense))) diag.push_back(std::move(d));
    }
    return diag;
}

// ---------------------------------------------------------------- Betti numbers

std::int64_t BettiProfile::at(int dim) const {
    auto it = betti.find(dim);
    return it == betti.end() ? 0 : it->second;
}

std::map<int, std::int64_t> BettiProfile::nonzero() const {
    std::map<int, std::int64_t> out;
    for (const auto& [d, b] : betti) {
        if (b != 0) out[d] = b;
    }
    return out;
}

bool BettiProfile::torsion_free() const {
    for (const auto& [d, t] : torsion) {
        if (!t.empty()) return false;
    }
    return true;
}

std::int64_t BettiProfile::euler() const {
    std::int64_t chi = 0;
    for (const auto& [d, b] : betti) chi += ((d + 2) % 2 == 0 ? 1 : -1) * b;
    return chi;
}

BettiProfile reduced_betti(const SimplicialComplex& k, Ring ring) {
    const ChainBoundary c = boundary_matrices(k);
    const int dim = k.dimension();
    std::vector<std::size_t> ranks;  // ranks[j] = rank of d[j]
    BettiProfile out;
    out.ring = ring;
    if (ring == Ring::Field) {
        ranks = boundary_ranks_mod_p(c, kPrimeA);
        if (boundary_ranks_mod_p(c, kPrimeB) != ranks) {
            throw std::runtime_error("boundary ranks differ between the two primes");
        }
    } else {
        std::vector<std::vector<BigInt>> diagonals;
        for (const auto& d : c.d) {
            diagonals.push_back(smith_diagonal(d));
            ranks.push_back(diagonals.back().size());
        }
        for (int i = -1; i <= dim; ++i) {
            auto& tors = out.torsion[i];
            // torsion of H_i comes from the invariant factors of d[i+1]
            if (i + 1 <= dim) {
                for (const auto& f : diagonals[i + 1]) {
                    if (f > 1) tors.push_back(static_cast<std::int64_t>(f));
                }
            }
        }
    }
    auto rank_of = [&](int j) -> std::int64_t {
        return (j >= 0 && j <= dim) ? static_cast<std::int64_t>(ranks[j]) : 0;
    };
    for (int i = -1; i <= dim; ++i) {
        out.betti[i] = static_cast<std::int64_t>(k.face_count(i)) - rank_of(i) - rank_of(i + 1);
    }
    return out;
}

BettiProfile join_betti(const BettiProfile& a, const BettiProfile& b) {
    BettiProfile out;
    out.ring = Ring::Field;
    for (const auto& [i, bi] : a.betti) {
        for (const auto& [j, bj] : b.betti) out.betti[i + j + 1] += bi * bj;
    }
    return out;
}

nlohmann::json betti_to_json(const BettiProfile& b) {
    nlohmann::json j;
    j["ring"] = b.ring == Ring::Field ? "field" : "integer";
    nlohmann::json betti = nlohmann::json::object();
    for (const auto& [d, v] : b.betti) betti[std::to_string(d)] = v;
    j["betti"] = std::move(betti);
    if (b.ring == Ring::Integer) {
        nlohmann::json torsion = nlohmann::json::object();
        for (const auto& [d, t] : b.torsion) {
            if (!t.empty()) torsion[std::to_string(d)] = t;
        }
        j["torsion"] = std::move(torsion);
    }
    return j;
}

std::string betti_plain(const BettiProfile& b) {
    std::ostringstream out;
    out << "betti: {";
    bool first = true;
    for (const auto& [d, v] : b.nonzero()) {
        out << (first ? "" : ", ") << d << ": " << v;
        first = false;
    }
    out << '}';
    if (b.ring == Ring::Integer) {
        out << ", torsion: {";
        first = true;
        for (const auto& [d, t] : b.torsion) {
            if (t.empty()) continue;
            out << (first ? "" : ", ") << d << ": [";
            for (std::size_t i = 0; i < t.size(); ++i) out << (i ? ", " : "") << t[i];
            out << ']';
            first = false;
        }
        out << '}';
    }
    return out.str();
}

// ---------------------------------------------------------------- Reisner

std::int64_t link_sphere_count(const Face& f) {
    std::int64_t count = 1;
    for (int m : link_decomposition(f)) count *= factorial(m - 2);
    return count;
}

namespace {

std::vector<ReisnerFailure> check_link(const WhitehouseComplex& k, std::size_t global) {
    std::vector<ReisnerFailure> failures;
    const Face f = k.face_at(global);
    auto [fdim, id] = k.complex.locate(global);
    const Subcomplex lk = link(k.complex, k.complex.face(fdim, id));
    const int expected_dim = k.n - 4 - static_cast<int>(f.size());
    if (lk.complex.dimension() != expected_dim) {
        failures.push_back({f, lk.complex.dimension(), 0,
                            "link has dimension " + std::to_string(lk.complex.dimension()) +
                                ", expected " + std::to_string(expected_dim)});
        return failures;
    }
    const BettiProfile b = reduced_betti(lk.complex, Ring::Field);
    for (int i = -1; i < expected_dim; ++i) {
        if (b.at(i) != 0) failures.push_back({f, i, b.at(i), "nonvanishing homology below the top"});
    }
    const std::int64_t expected = link_sphere_count(f);
    if (b.at(expected_dim) != expected) {
        failures.push_back({f, expected_dim, b.at(expected_dim),
                            "top Betti number differs from " + std::to_string(expected)});
    }
    return failures;
}

}  // namespace

ReisnerReport reisner_check(const WhitehouseComplex& k, unsigned jobs, bool deduplicate) {
    ReisnerReport report;
    report.n = k.n;
    report.faces_checked = k.complex.size();

    std::map<std::vector<int>, std::size_t> representative;
    std::vector<std::size_t> todo;
    for (std::size_t g = 0; g < k.complex.size(); ++g) {
        auto sig = link_signature(k.face_at(g));
        if (representative.emplace(sig, g).second || !deduplicate) todo.push_back(g);
    }
    report.distinct_signatures = representative.size();
    report.links_computed = todo.size();

    std::vector<std::vector<ReisnerFailure>> results(todo.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < todo.size(); t = next++) results[t] = check_link(k, todo[t]);
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(todo.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& r : results) {
        for (auto& failure : r) report.failures.push_back(std::move(failure));
    }
    return report;
}

ReisnerReport reisner_check(int n, unsigned jobs, bool deduplicate) {
    return reisner_check(build_direct(n), jobs, deduplicate);
}

nlohmann::json reisner_to_json(const ReisnerReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["passed"] = r.passed();
    j["faces_checked"] = r.faces_checked;
    j["distinct_signatures"] = r.distinct_signatures;
    j["links_computed"] = r.links_computed;
    auto failures = nlohmann::json::array();
    for (const auto& f : r.failures) {
        failures.push_back({{"face", f.face}, {"degree", f.degree}, {"value", f.value}, {"reason", f.reason}});
    }
    j["failures"] = std::move(failures);
    return j;
}

}  // namespace whitehouse
