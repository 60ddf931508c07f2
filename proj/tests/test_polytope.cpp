#include <random>
#include <set>

#include "doctest.h"
#include "example_data.hpp"
#include "toric/polytope.hpp"

using namespace toric;

namespace {

bool has(const std::vector<Vec>& sorted, const Vec& v) {
    return std::binary_search(sorted.begin(), sorted.end(), v, VecLess());
}

// Independent membership oracle: supporting hyperplanes through every d-subset of vertices.
bool brute_contains(const std::vector<Vec>& verts, const Vec& u) {
    std::size_t d = u.size(), n = verts.size();
    std::vector<std::size_t> idx(d);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t start) -> bool {
        if (k == d) {
            Mat diffs;
            for (std::size_t i = 1; i < d; ++i) diffs.push_back(sub(verts[idx[i]], verts[idx[0]]));
            Mat K = d == 1 ? identity(1) : right_kernel(diffs, d);
            if (K.size() != 1) return true;
            const Vec& nrm = K[0];
            Int c = dot(nrm, verts[idx[0]]);
            int sgn = 0;
            for (const auto& v : verts) {
                Int s = dot(nrm, v) - c;
                if (s == 0) continue;
                int t = s > 0 ? 1 : -1;
                if (sgn == 0) sgn = t;
                else if (sgn != t) return true;
            }
            Int s = dot(nrm, u) - c;
            return !(sgn > 0 && s < 0) && !(sgn < 0 && s > 0);
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[k] = i;
            if (!rec(k + 1, i + 1)) return false;
        }
        return true;
    };
    return rec(0, 0);
}

std::vector<Vec> random_points(std::mt19937& rng, std::size_t d, std::size_t count, int r) {
    std::uniform_int_distribution<int> dist(-r, r);
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < count; ++i) {
        Vec v(d);
        for (auto& x : v) x = dist(rng);
        pts.push_back(v);
    }
    return pts;
}

}  // namespace

TEST_CASE("hull of the 5-dim polytope") {
    auto V = examples::delta5_polar_vertices();
    auto P = LatticePolytope::hull(V);
    CHECK(P.rank() == 5);
    std::set<Vec, VecLess> want(V.begin(), V.end());
    CHECK(std::set<Vec, VecLess>(P.vertices().begin(), P.vertices().end()) == want);
    CHECK(is_reflexive(P));
    CHECK(P.interior_points() == std::vector<Vec>{make_vec({0, 0, 0, 0, 0})});
    const auto& bd = P.boundary_points();
    CHECK(has(bd, make_vec({0, 0, 1, 0, 0})));
    CHECK(has(bd, make_vec({-1, -1, 1, 0, 0})));
    for (auto v : {make_vec({1, 0, 10, -1, -1}), make_vec({0, 1, 10, -1, -1}), make_vec({0, 0, 7, 0, -1}),
                   make_vec({0, 0, 3, 1, -1}), make_vec({0, 0, 5, -1, 0})})
        CHECK(has(bd, v));
    CHECK(polar(polar(P)) == P);
}

TEST_CASE("simplex hull and degenerate input") {
    auto P = LatticePolytope::hull(examples::delta3_vertices());
    CHECK(P.vertices().size() == 4);
    CHECK(P.faces(2).size() == 4);
    CHECK(P.faces(1).size() == 6);
    CHECK(P.faces(0).size() == 4);
    CHECK(P.interior_points() == std::vector<Vec>{make_vec({0, 0, 0})});
    try {
        LatticePolytope::hull({make_vec({1, 0}), make_vec({-1, 0})});
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == "not_full_dimensional");
        CHECK(e.context().find("[[1,0]]") != std::string::npos);
    }
}

TEST_CASE("polar of delta4") {
    auto D = LatticePolytope::hull(examples::delta4_vertices());
    auto Q = polar(D);
    auto want = examples::delta4_polar_vertices();
    std::sort(want.begin(), want.end(), VecLess());
    CHECK(Q.vertices() == want);
    CHECK(polar(Q) == D);
    CHECK(has(Q.boundary_points(), make_vec({11, -1, -1, -1})));
    for (const auto& f : D.faces(1)) CHECK(dual_face(Q, dual_face(D, f)).vertices == f.vertices);
    for (int d = 0; d < 4; ++d)
        for (const auto& f : D.faces(d)) CHECK(dual_face(Q, dual_face(D, f)).vertices == f.vertices);
}

TEST_CASE("non reflexive and undefined polars") {
    auto P = LatticePolytope::hull({make_vec({2, 0}), make_vec({-2, 0}), make_vec({0, 2}), make_vec({0, -2})});
    try {
        polar(P);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == "not_reflexive");
        CHECK(e.context().find("1/2") != std::string::npos);
    }
    auto S = LatticePolytope::hull({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})});
    CHECK_FALSE(is_reflexive(S));
    CHECK_THROWS_AS(polar(S), Error);
    CHECK(is_reflexive(LatticePolytope::hull(examples::slice_vertices())));
}

TEST_CASE("edge products for the 3-dim pair vanish") {
    auto D = LatticePolytope::hull(examples::delta3_vertices());
    auto P = polar(D);
    for (const auto* X : {&D, &P}) {
        Int total = 0;
        for (const auto& e : X->faces(1)) total += Int(e.lstar) * Int(dual_face(*X, e).lstar);
        CHECK(total == 0);
    }
}

TEST_CASE("skeleton of the square") {
    auto P = LatticePolytope::hull({make_vec({1, 1}), make_vec({1, -1}), make_vec({-1, 1}), make_vec({-1, -1})});
    auto G = skeleton(P);
    CHECK(G.nodes.size() == 8);
    CHECK(G.edges.size() == 8);
    std::vector<int> deg(8, 0);
    for (auto [a, b] : G.edges) ++deg[static_cast<std::size_t>(a)], ++deg[static_cast<std::size_t>(b)];
    for (int d : deg) CHECK(d == 2);
    auto S = skeleton(LatticePolytope::hull(examples::delta3_vertices()));
    for (auto [a, b] : S.edges) CHECK(content(sub(S.nodes[static_cast<std::size_t>(a)], S.nodes[static_cast<std::size_t>(b)])) == 1);
}

TEST_CASE("lattice points agree with brute force") {
    std::mt19937 rng(5);
    int cases = 0;
    while (cases < 100) {
        std::size_t d = 2 + rng() % 2;
        auto pts = random_points(rng, d, 4 + rng() % 4, 3);
        LatticePolytope P;
        try {
            P = LatticePolytope::hull(pts);
        } catch (const Error&) {
            continue;
        }
        ++cases;
        std::vector<Vec> brute;
        std::vector<long> x(d, -3);
        while (true) {
            Vec v;
            for (auto c : x) v.emplace_back(c);
            if (brute_contains(P.vertices(), v)) brute.push_back(v);
            std::size_t k = d;
            while (k > 0 && x[k - 1] == 3) x[--k] = -3;
            if (k == 0) break;
            ++x[k - 1];
        }
        std::sort(brute.begin(), brute.end(), VecLess());
        CHECK(P.points() == brute);
        CHECK(LatticePolytope::hull(P.vertices()) == P);
    }
}

TEST_CASE("random reflexive polytopes: polar involution and face duality") {
    std::mt19937 rng(9);
    int cases = 0;
    while (cases < 100) {
        std::size_t d = 2 + rng() % 2;
        auto pts = random_points(rng, d, 5 + rng() % 5, 1);
        LatticePolytope P;
        try {
            P = LatticePolytope::hull(pts);
        } catch (const Error&) {
            continue;
        }
        if (!is_reflexive(P)) continue;
        ++cases;
        auto Q = polar(P);
        CHECK(polar(Q) == P);
        CHECK(P.interior_points().size() == 1);
        for (int k = 0; k < static_cast<int>(d); ++k)
            CHECK(P.faces(k).size() == Q.faces(static_cast<int>(d) - 1 - k).size());
        for (const auto& f : P.faces(0)) CHECK(dual_face(Q, dual_face(P, f)).vertices == f.vertices);
    }
}
