#include <doctest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "whitehouse/homology.hpp"
#include "whitehouse/morse.hpp"

using namespace whitehouse;

namespace {

// Petersen graph: outer 5-cycle 0..4, spokes i -- i+5, inner pentagram.
SimplicialComplex petersen() {
    std::vector<std::vector<Vertex>> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.push_back({i, (i + 1) % 5});
        edges.push_back({i, i + 5});
        edges.push_back({i + 5, (i + 2) % 5 + 5});
    }
    return SimplicialComplex::from_facets(10, edges);
}

std::vector<std::size_t> closed_walk_successors_ok(const FacePoset& p, const MorseMatching& m,
                                                   const std::vector<std::size_t>& cycle) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const std::size_t x = cycle[i], y = cycle[(i + 1) % cycle.size()];
        bool ok = false;
        if (m.partner[x] == static_cast<std::int64_t>(y) && p.rank[y] == p.rank[x] + 1) ok = true;  // up along the pair
        if (p.rank[y] + 1 == p.rank[x] && m.partner[x] != static_cast<std::int64_t>(y)) {
            for (std::size_t z : p.covers_below(x)) ok = ok || z == y;
        }
        if (!ok) bad.push_back(i);
    }
    return bad;
}

}  // namespace

TEST_SUITE_BEGIN("morse");

TEST_CASE("hand-checked matchings") {
    SUBCASE("n = 3: the empty face is critical") {
        const MorseMatching m = build_matching(3);
        REQUIRE(m.partner.size() == 1);
        CHECK(m.is_critical(0));
    }
    SUBCASE("n = 4") {
        const RecursiveBuild r = build_recursive(4);
        const auto& w = r.top().complex;
        const MorseMatching m = build_matching(r);
        const FacePoset p = face_poset(w.complex, true);
        const auto pairs = m.pairs(p);
        REQUIRE(pairs.size() == 1);
        CHECK(w.face_at(pairs[0].first).empty());
        CHECK(w.face_at(pairs[0].second).to_string() == "{{2,3}}");
        const auto crit = m.critical(p);
        REQUIRE(crit.size() == 2);
        CHECK(w.face_at(crit[0]).to_string() == "{{2,4}}");
        CHECK(w.face_at(crit[1]).to_string() == "{{3,4}}");
    }
}

TEST_CASE("validity, acyclicity and census") {
    for (int n = 3; n <= 8; ++n) {
        const RecursiveBuild r = build_recursive(n);
        const auto& k = r.top().complex.complex;
        const MorseMatching m = build_matching(r);
        const FacePoset p = face_poset(k, true);
        CHECK_NOTHROW(check_matching(p, m));
        CHECK(verify_acyclic(p, m).acyclic);
        const auto census = critical_census(p, m);
        REQUIRE(census.size() == 1);
        CHECK(census.begin()->first == n - 4);
        CHECK(static_cast<std::int64_t>(census.begin()->second) == factorial(n - 2));
    }
}

TEST_CASE("adjacent-rank check agrees with a full-digraph search") {
    for (int n = 3; n <= 6; ++n) {
        const RecursiveBuild r = build_recursive(n);
        const FacePoset p = face_poset(r.top().complex.complex, true);
        const MorseMatching m = build_matching(r);
        CHECK(verify_acyclic(p, m).acyclic == !oracle::has_cycle(p, m));
        CHECK_FALSE(oracle::has_cycle(p, m));
    }
}

TEST_CASE("a cyclic matching is caught") {
    const SimplicialComplex k = petersen();
    const FacePoset p = face_poset(k, true);
    MorseMatching m;
    m.partner.assign(k.size(), -1);
    for (Vertex i = 0; i < 5; ++i) {
        const std::vector<Vertex> v{i};
        std::vector<Vertex> e{i, static_cast<Vertex>((i + 1) % 5)};
        std::sort(e.begin(), e.end());
        const auto a = *k.find_global(v), b = *k.find_global(e);
        m.partner[a] = static_cast<std::int64_t>(b);
        m.partner[b] = static_cast<std::int64_t>(a);
    }
    CHECK_NOTHROW(check_matching(p, m));
    CHECK(oracle::has_cycle(p, m));
    const AcyclicityReport report = verify_acyclic(p, m);
    CHECK_FALSE(report.acyclic);
    CHECK(report.cycle.size() == 10);
    CHECK(closed_walk_successors_ok(p, m, report.cycle).empty());

    SUBCASE("breaking one pair restores acyclicity") {
        const auto a = *k.find_global(std::vector<Vertex>{0});
        const auto b = static_cast<std::size_t>(m.partner[a]);
        m.partner[a] = m.partner[b] = -1;
        CHECK(verify_acyclic(p, m).acyclic);
        CHECK_FALSE(oracle::has_cycle(p, m));
    }
}

TEST_CASE("invalid matchings are rejected") {
    const SimplicialComplex k = SimplicialComplex::from_facets(3, {{0, 1, 2}});
    const FacePoset p = face_poset(k, true);
    MorseMatching m;
    m.partner.assign(k.size(), -1);
    SUBCASE("wrong size") {
        m.partner.pop_back();
        CHECK_THROWS_AS(check_matching(p, m), std::invalid_argument);
    }
    SUBCASE("not a cover") {
        const auto a = *k.find_global(std::vector<Vertex>{0}), b = *k.find_global(std::vector<Vertex>{0, 1, 2});
        m.partner[a] = static_cast<std::int64_t>(b);
        m.partner[b] = static_cast<std::int64_t>(a);
        CHECK_THROWS_AS(check_matching(p, m), std::invalid_argument);
    }
    SUBCASE("asymmetric") {
        const auto a = *k.find_global(std::vector<Vertex>{0}), b = *k.find_global(std::vector<Vertex>{0, 1});
        m.partner[a] = static_cast<std::int64_t>(b);
        CHECK_THROWS_AS(check_matching(p, m), std::invalid_argument);
    }
    SUBCASE("the empty face outside the poset") {
        const FacePoset q = face_poset(k, false);
        const auto b = *k.find_global(std::vector<Vertex>{0});
        m.partner[0] = static_cast<std::int64_t>(b);
        m.partner[b] = 0;
        CHECK_THROWS_AS(check_matching(q, m), std::invalid_argument);
    }
}

TEST_CASE("the A-D part is contractible and an order ideal") {
    const RecursiveBuild r = build_recursive(7);
    for (int n = 4; n <= 7; ++n) {
        const Level& level = r.level(n);
        CHECK(check_order_ideals(level));
        const AbcdPart q = abcd_part(level);
        // the matching uses the level's face numbering
        const FacePoset p = face_poset(level.complex.complex, true);
        CHECK_NOTHROW(check_matching(p, q.matching));
        std::size_t in_q = 0;
        for (std::size_t x = 0; x < q.in_q.size(); ++x) {
            if (!q.in_q[x]) continue;
            ++in_q;
            REQUIRE_FALSE(q.matching.is_critical(x));
            CHECK(q.in_q[static_cast<std::size_t>(q.matching.partner[x])]);
        }
        CHECK(in_q == q.complex.size());
        if (n <= 6) {
            const BettiProfile b = reduced_betti(q.complex, Ring::Field);
            CHECK(b.nonzero().empty());
        }
    }
}

TEST_CASE("critical cells") {
    CHECK(is_iterated_e_image(Face::make(3, {})));
    CHECK(is_iterated_e_image(Face::make(4, {0b10100})));   // {2,4}
    CHECK_FALSE(is_iterated_e_image(Face::make(4, {0b01100})));  // {2,3}
    for (int n = 3; n <= 7; ++n) {
        const CriticalCharacterization c = characterize_critical(n);
        CHECK(c.ok());
        CHECK(static_cast<std::int64_t>(c.expected_count) == factorial(n - 2));
    }
    CHECK(characterize_critical(5).nested_chains == 4);
}

TEST_CASE("export") {
    const RecursiveBuild r = build_recursive(5);
    const auto& w = r.top().complex;
    const FacePoset p = face_poset(w.complex, true);
    const MorseMatching m = build_matching(r);
    const auto j = matching_to_json(w, p, m);
    CHECK(j["n"] == 5);
    CHECK(j["critical"].size() == 6);
    CHECK(j["pairs"].size() * 2 + 6 == w.complex.size());
    CHECK(matching_to_json(w, p, m) == j);
    const std::string dot = matching_dot(w, p, m);
    CHECK(dot.rfind("digraph", 0) == 0);
}

TEST_SUITE_END();
