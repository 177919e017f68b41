#include <doctest.h>

#include <random>
#include <stdexcept>

#include "whitehouse/complex.hpp"
#include "whitehouse/whitehouse.hpp"

using namespace whitehouse;

namespace {

SimplicialComplex triangle_boundary() { return SimplicialComplex::from_facets(3, {{0, 1}, {1, 2}, {0, 2}}); }

SimplicialComplex random_complex(std::mt19937& rng, std::size_t vertices, int facets, int max_size) {
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(vertices - 1));
    std::uniform_int_distribution<int> size(1, max_size);
    std::vector<std::vector<Vertex>> fs;
    for (int i = 0; i < facets; ++i) {
        std::vector<Vertex> f;
        const int s = size(rng);
        while (static_cast<int>(f.size()) < s) {
            Vertex v = pick(rng);
            if (std::find(f.begin(), f.end(), v) == f.end()) f.push_back(v);
        }
        fs.push_back(f);
    }
    return SimplicialComplex::from_facets(vertices, fs);
}

}  // namespace

TEST_SUITE_BEGIN("complex");

TEST_CASE("face table interning") {
    FaceTable t(2);
    const std::vector<Vertex> a{0, 1}, b{1, 2};
    CHECK(t.insert(a) == std::pair<std::size_t, bool>{0, true});
    CHECK(t.insert(b) == std::pair<std::size_t, bool>{1, true});
    CHECK(t.insert(a) == std::pair<std::size_t, bool>{0, false});
    CHECK(t.find(b) == 1);
    const std::vector<Vertex> c{0, 2};
    CHECK_FALSE(t.find(c).has_value());
    for (Vertex i = 0; i < 1000; ++i) {
        const std::vector<Vertex> f{i, i + 1000};
        t.insert(f);
    }
    CHECK(t.size() == 1002);
    CHECK(t.find(std::vector<Vertex>{999, 1999}).has_value());
}

TEST_CASE("construction and lookup") {
    const SimplicialComplex k = triangle_boundary();
    CHECK(k.dimension() == 1);
    CHECK(k.size() == 7);
    CHECK(k.face_count(-1) == 1);
    CHECK(k.face_count(0) == 3);
    CHECK(k.face_count(1) == 3);
    CHECK(k.face_count(2) == 0);
    CHECK(k.contains(std::vector<Vertex>{0, 2}));
    CHECK_FALSE(k.contains(std::vector<Vertex>{0, 1, 2}));
    for (std::size_t g = 0; g < k.size(); ++g) {
        auto [d, id] = k.locate(g);
        CHECK(k.global_index(d, id) == g);
        CHECK(k.find_global(k.face(d, id)) == g);
    }
    // lexicographic within a dimension
    CHECK(face_string(k.face(1, 0)) == "{0,1}");
    CHECK(face_string(k.face(1, 1)) == "{0,2}");

    SUBCASE("closure is checked") {
        CHECK_THROWS_AS(SimplicialComplex::from_faces(3, {{0}, {0, 1}}), std::invalid_argument);
        CHECK_NOTHROW(SimplicialComplex::from_faces(3, {{0}, {1}, {0, 1}}));
    }
    SUBCASE("bad faces") {
        CHECK_THROWS_AS(SimplicialComplex::from_facets(3, {{0, 0}}), std::invalid_argument);
        CHECK_THROWS_AS(SimplicialComplex::from_facets(3, {{0, 5}}), std::invalid_argument);
    }
    SUBCASE("empty complex") {
        const SimplicialComplex e(4);
        CHECK(e.dimension() == -1);
        CHECK(e.size() == 1);
        CHECK(f_vector(e).entries == std::vector<std::int64_t>{1});
    }
}

TEST_CASE("builder reports duplicates") {
    ComplexBuilder b(3);
    CHECK(b.add({1, 0}));
    CHECK_FALSE(b.add({0, 1}));
    CHECK(b.add({0}));
    CHECK(b.add({1}));
    const SimplicialComplex k = std::move(b).build(true);
    CHECK(k.size() == 4);
}

TEST_CASE("f- and h-vectors") {
    const SimplicialComplex k = triangle_boundary();
    const FVector f = f_vector(k);
    CHECK(f.entries == std::vector<std::int64_t>{1, 3, 3});
    CHECK(f.at(0) == 3);
    CHECK(f.at(5) == 0);
    CHECK(h_vector_of(f, 2).entries == std::vector<std::int64_t>{1, 1, 1});
    CHECK_THROWS_AS(h_vector_of(f, 1), std::invalid_argument);

    const SimplicialComplex simplex = SimplicialComplex::from_facets(3, {{0, 1, 2}});
    CHECK(h_vector_of(f_vector(simplex), 3).entries == std::vector<std::int64_t>{1, 0, 0, 0});

    SUBCASE("round trip") {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            const FVector g = f_vector(random_complex(rng, 8, 6, 4));
            CHECK(f_vector_of(h_vector_of(g, g.dimension() + 1)) == g);
        }
        for (int n = 3; n <= 8; ++n) {
            const FVector g = f_vector(build_direct(n).complex);
            CHECK(f_vector_of(h_vector_of(g, n - 3)) == g);
        }
    }
}

TEST_CASE("reduced Euler characteristic") {
    CHECK(reduced_euler_characteristic(f_vector(SimplicialComplex(0))) == -1);
    CHECK(reduced_euler_characteristic(f_vector(SimplicialComplex::from_facets(1, {{0}}))) == 0);
    CHECK(reduced_euler_characteristic(f_vector(SimplicialComplex::from_facets(2, {{0}, {1}}))) == 1);
    CHECK(reduced_euler_characteristic(f_vector(triangle_boundary())) == -1);
}

TEST_CASE("binomial") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(5, -1) == 0);
}

TEST_CASE("facets and purity") {
    const SimplicialComplex k = SimplicialComplex::from_facets(4, {{0, 1, 2}, {2, 3}});
    const auto fs = facets(k);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].first == 1);
    CHECK(fs[1].first == 2);
    CHECK_FALSE(is_pure(k));
    CHECK(is_pure(triangle_boundary()));
}

TEST_CASE("links") {
    const SimplicialComplex k = triangle_boundary();
    const Subcomplex l = link(k, std::vector<Vertex>{0});
    CHECK(l.complex.face_count(0) == 2);
    CHECK(l.complex.dimension() == 0);
    CHECK(l.to_parent == std::vector<Vertex>{1, 2});
    const Subcomplex top = link(k, std::vector<Vertex>{0, 1});
    CHECK(top.complex.size() == 1);
    const Subcomplex whole = link(k, std::vector<Vertex>{});
    CHECK(whole.complex == k);
    CHECK_THROWS_AS(link(k, std::vector<Vertex>{0, 1, 2}), std::invalid_argument);
}

TEST_CASE("joins multiply f-polynomials") {
    std::vector<SimplicialComplex> ks;
    for (int n = 3; n <= 5; ++n) ks.push_back(build_direct(n).complex);
    ks.push_back(triangle_boundary());
    for (const auto& a : ks) {
        for (const auto& b : ks) {
            const SimplicialComplex j = join(a, b);
            CHECK(j.vertex_count() == a.vertex_count() + b.vertex_count());
            CHECK(f_vector(j).entries == f_polynomial_product(f_vector(a), f_vector(b)));
        }
    }
    const SimplicialComplex j3 = join_all({triangle_boundary(), triangle_boundary(), SimplicialComplex(0)});
    CHECK(f_vector(j3).entries == std::vector<std::int64_t>{1, 6, 15, 18, 9});
    CHECK(join_all({}).size() == 1);
}

TEST_CASE("face poset") {
    const SimplicialComplex k = SimplicialComplex::from_facets(4, {{0, 1, 2}, {2, 3}});
    const FacePoset p = face_poset(k, true);
    const FacePoset q = face_poset(k, false);
    CHECK(p.element_count() == k.size());
    CHECK(q.element_count() == k.size() - 1);
    const FVector f = f_vector(k);
    std::size_t covers = 0;
    for (int d = 0; d <= k.dimension(); ++d) covers += static_cast<std::size_t>((d + 1) * f.at(d));
    CHECK(p.cover_count() == covers);
    CHECK(q.cover_count() == covers - f.at(0));
    const auto top = *k.find_global(std::vector<Vertex>{0, 1, 2});
    CHECK(p.rank[top] == 3);
    CHECK(p.covers_below(top).size() == 3);
}

TEST_CASE("json and dot export") {
    const SimplicialComplex k = triangle_boundary();
    const auto j = complex_to_json(k, [](Vertex v) { return nlohmann::json("v" + std::to_string(v)); });
    CHECK(j["vertices"].size() == 3);
    CHECK(j["faces"].size() == 7);
    CHECK(j["faces"][0].empty());
    CHECK(complex_from_json(j) == k);
    CHECK_THROWS_AS(complex_from_json(nlohmann::json::object()), std::invalid_argument);
    const std::string dot = hasse_dot(k, face_poset(k, true), [](std::span<const Vertex> f) { return face_string(f); });
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("{0,1}") != std::string::npos);
}

TEST_SUITE_END();
