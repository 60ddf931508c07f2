#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "example_data.hpp"
#include "toric/fan.hpp"

using namespace toric;

namespace {

Fan sigma5() {
    Fan f = face_fan(LatticePolytope::hull(examples::delta5_polar_vertices()));
    Fan b2 = face_fan(LatticePolytope::hull(examples::base2_polar_vertices()));
    return subdivide_domain(examples::alpha_matrix(), f, b2);
}

Fan base2() { return face_fan(LatticePolytope::hull(examples::base2_polar_vertices())); }

Fan line_fan() { return Fan::make(1, {make_vec({1}), make_vec({-1})}, {{0}, {1}}); }

Fan x4_fan(const std::vector<int>& insertions) {
    Fan f = face_fan(LatticePolytope::hull(examples::delta4_polar_vertices()));
    for (int i : insertions) f = star_subdivide(f, examples::z(i));
    return f;
}

// Cones avoiding y0, y1 and the pair {y4, y5}.
Fan sigma5_part(const Fan& s5) {
    int i0 = s5.ray_index(examples::y(0)), i1 = s5.ray_index(examples::y(1));
    int i4 = s5.ray_index(examples::y(4)), i5 = s5.ray_index(examples::y(5));
    std::vector<RaySet> keep;
    for (const auto& c : s5.all_cones()) {
        auto in = [&](int i) { return std::find(c.begin(), c.end(), i) != c.end(); };
        if (c.empty() || in(i0) || in(i1) || (in(i4) && in(i5))) continue;
        keep.push_back(c);
    }
    return Fan::make(s5.rank, s5.rays, keep);
}

std::set<Vec, VecLess> ray_set(const std::vector<Vec>& v) { return {v.begin(), v.end()}; }

FanMorphism final_phi() {
    Fan x4 = x4_fan(examples::x4_insertions());
    Fan d = subdivide_domain(examples::phi_matrix(), sigma5_part(sigma5()), x4);
    d = star_subdivide(d, examples::y(745));
    return check_compatibility(examples::phi_matrix(), d, x4);
}

// Random complete fan in the plane from primitive vectors sorted by angle.
Fan random_plane_fan(std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-4, 4);
    while (true) {
        std::set<Vec, VecLess> s;
        int n = 3 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) {
            Vec v = make_vec({d(rng), d(rng)});
            if (!is_zero(v)) s.insert(primitive(v));
        }
        std::vector<Vec> v(s.begin(), s.end());
        std::sort(v.begin(), v.end(), [](const Vec& a, const Vec& b) {
            return std::atan2(a[1].convert_to<double>(), a[0].convert_to<double>()) <
                   std::atan2(b[1].convert_to<double>(), b[0].convert_to<double>());
        });
        if (v.size() < 3) continue;
        bool ok = true;
        std::vector<RaySet> cones;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec& a = v[i];
            const Vec& b = v[(i + 1) % v.size()];
            if (a[0] * b[1] - a[1] * b[0] <= 0) { ok = false; break; }
            cones.push_back({static_cast<int>(i), static_cast<int>((i + 1) % v.size())});
        }
        if (ok) return Fan::make(2, v, cones);
    }
}

}  // namespace

TEST_CASE("face fans") {
    Fan f = face_fan(LatticePolytope::hull(examples::delta5_polar_vertices()));
    CHECK(f.rays.size() == 10);
    CHECK(f.cones.size() == 14);
    Fan t = face_fan(LatticePolytope::hull(examples::delta3_vertices()));
    CHECK(t.rays.size() == 4);
    CHECK(t.cones.size() == 4);
    Fan sq = face_fan(LatticePolytope::hull({make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1}), make_vec({0, -1})}));
    CHECK(sq.cones.size() == 4);
    CHECK(classify(sq).smooth);
    CHECK_THROWS_AS(face_fan(LatticePolytope::hull({make_vec({2, 0}), make_vec({-1, 0}), make_vec({0, 1}), make_vec({0, -1})})),
                    Error);
}

TEST_CASE("normal fans") {
    Fan nf = normal_fan(LatticePolytope::hull(examples::delta3_vertices()));
    CHECK(ray_set(nf.rays) == ray_set(examples::slice_vertices()));
    LatticePolytope slice = LatticePolytope::hull(examples::slice_vertices());
    REQUIRE(is_reflexive(slice));
    Fan ns = normal_fan(slice);
    CHECK(ray_set(ns.rays) == ray_set({make_vec({1, 0, 0}), make_vec({0, 1, 0}), make_vec({0, 0, 1}), make_vec({-1, -4, -6})}));
    LatticePolytope d5 = LatticePolytope::hull(examples::delta5_polar_vertices());
    Fan a = normal_fan(polar(d5)), b = face_fan(d5);
    CHECK(ray_set(a.rays) == ray_set(b.rays));
    CHECK(a.cones.size() == b.cones.size());
    Fan sq = normal_fan(LatticePolytope::hull({make_vec({1, 1}), make_vec({-1, 1}), make_vec({1, -1}), make_vec({-1, -1})}));
    CHECK(ray_set(sq.rays) == ray_set({make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1}), make_vec({0, -1})}));
    CHECK(classify(sq).complete);
}

TEST_CASE("classification") {
    Fan p2 = Fan::make(2, {make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
    FanClass k = classify(p2);
    CHECK(k.simplicial);
    CHECK(k.smooth);
    CHECK(k.complete);
    Fan half = Fan::make(2, {make_vec({1, 0}), make_vec({0, 1})}, {{0, 1}});
    CHECK_FALSE(classify(half).complete);
    CHECK_FALSE(is_smooth_cone({examples::z(1), examples::z(2), examples::z(4)}));
    Fan s5 = sigma5();
    LatticePolytope d5 = polar(LatticePolytope::hull(examples::delta5_polar_vertices()));
    CHECK(classify(s5, &d5).crepant);
    CHECK(classify(s5).complete);
}

TEST_CASE("triangle face with weights 1, 2, 3") {
    // a v1 + b v2 + c v4 = (a + b + c) v334 over small positive integers
    std::vector<std::vector<int>> sols;
    for (int a = 1; a <= 6; ++a)
        for (int b = 1; b <= 6; ++b)
            for (int c = 1; c <= 6; ++c) {
                Vec lhs = add(add(scale(examples::z(1), a), scale(examples::z(2), b)), scale(examples::z(4), c));
                if (lhs == scale(examples::z(334), a + b + c) && std::gcd(a, std::gcd(b, c)) == 1) sols.push_back({a, b, c});
            }
    REQUIRE(sols.size() == 1);
    auto w = sols[0];
    std::sort(w.begin(), w.end());
    CHECK(w == std::vector<int>{1, 2, 3});
    // inserting the interior point and edge points resolves the cone
    Fan f = Fan::make(4, {examples::z(1), examples::z(2), examples::z(4)}, {{0, 1, 2}});
    for (int i : {334, 251, 276, 325}) f = star_subdivide(f, examples::z(i));
    CHECK(classify(f).smooth);
}

TEST_CASE("star subdivision") {
    Fan q = Fan::make(2, {make_vec({1, 0}), make_vec({0, 1})}, {{0, 1}});
    Fan s = star_subdivide(q, make_vec({1, 1}));
    CHECK(s.cones.size() == 2);
    CHECK(classify(s).smooth);
    CHECK(star_subdivide(s, make_vec({1, 1})).cones == s.cones);
    CHECK_THROWS_AS(star_subdivide(q, make_vec({-1, 0})), Error);
    Fan x4 = x4_fan(examples::x4_insertions());
    CHECK(x4.rays.size() == 12);
    int v = x4.ray_index(examples::z(334));
    for (const auto& c : x4.cones)
        if (std::find(c.begin(), c.end(), v) != c.end()) CHECK(is_smooth_cone(x4.cone_rays(c)));
    CHECK(classify(x4).complete);
    LatticePolytope d4 = LatticePolytope::hull(examples::delta4_vertices());
    CHECK(classify(x4, &d4).crepant);
}

TEST_CASE("Mori cones") {
    Fan p2 = Fan::make(2, {make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
    auto g = mori_cone(p2);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == make_vec({1, 1, 1, -3}));
    Fan pp = Fan::make(2, {make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1}), make_vec({0, -1})},
                       {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    auto h = mori_cone(pp);
    CHECK(ray_set(h) == ray_set({make_vec({1, 1, 0, 0, -2}), make_vec({0, 0, 1, 1, -2})}));
    CHECK_THROWS_AS(mori_cone(Fan::make(2, {make_vec({1, 0}), make_vec({0, 1})}, {{0, 1}})), Error);
}

TEST_CASE("alpha fibration") {
    Fan f = face_fan(LatticePolytope::hull(examples::delta5_polar_vertices()));
    CHECK_THROWS_AS(check_compatibility(examples::alpha_matrix(), f, base2()), Error);
    Fan s5 = sigma5();
    CHECK(s5.rays.size() == 10);
    CHECK(s5.cones.size() == 22);
    FanMorphism a = check_compatibility(examples::alpha_matrix(), s5, base2());
    CHECK(is_fibration(a));
    KernelFan kf = kernel_fan(a);
    CHECK(ray_set(kf.ambient_rays) == ray_set({examples::y(6), examples::y(7), examples::y(8), examples::y(9)}));
    CHECK(subdivide_domain(examples::alpha_matrix(), s5, base2()).cones.size() == 22);
    MonomialMap mm = homogeneous_map(a);
    Fan b2 = base2();
    auto img = [&](int u) {
        std::set<std::pair<Vec, Int>, std::less<>> out;
        for (auto [r, e] : mm.images[static_cast<std::size_t>(b2.ray_index(examples::base2_polar_vertices()[static_cast<std::size_t>(u)]))])
            out.insert({s5.rays[static_cast<std::size_t>(r)], e});
        return out;
    };
    CHECK(img(0) == std::set<std::pair<Vec, Int>, std::less<>>{{examples::y(0), Int(1)}});
    CHECK(img(2) == std::set<std::pair<Vec, Int>, std::less<>>{{examples::y(2), Int(1)}, {examples::y(3), Int(1)}});
    CHECK(img(3) == std::set<std::pair<Vec, Int>, std::less<>>{{examples::y(4), Int(12)}});
}

TEST_CASE("beta fibration") {
    Fan x6 = x4_fan({16});
    FanMorphism b = check_compatibility(examples::beta_matrix(), x6, line_fan());
    CHECK(is_fibration(b));
    MonomialMap mm = homogeneous_map(b);
    REQUIRE(mm.images[0].size() == 1);
    CHECK(x6.rays[static_cast<std::size_t>(mm.images[0][0].first)] == examples::z(0));
    CHECK(mm.images[0][0].second == 12);
    CHECK(x6.rays[static_cast<std::size_t>(mm.images[1][0].first)] == examples::z(3));
    CHECK_THROWS_AS(check_compatibility(examples::beta_matrix(), x4_fan({}), line_fan()), Error);

    Fan x12 = x4_fan(examples::x4_insertions());
    FanMorphism b12 = check_compatibility(examples::beta_matrix(), x12, line_fan());
    CHECK(is_fibration(b12));
    MonomialMap m12 = homogeneous_map(b12);
    auto named = [&](int ray) {
        std::set<std::pair<Vec, Int>, std::less<>> out;
        for (auto [r, e] : m12.images[static_cast<std::size_t>(ray)]) out.insert({x12.rays[static_cast<std::size_t>(r)], e});
        return out;
    };
    CHECK(named(0) == std::set<std::pair<Vec, Int>, std::less<>>{{examples::z(0), Int(12)}, {examples::z(170), Int(1)}});
    CHECK(named(1) == std::set<std::pair<Vec, Int>, std::less<>>{{examples::z(3), Int(12)}, {examples::z(168), Int(1)}});
}

TEST_CASE("Phi fibration onto the four-dimensional base") {
    Fan part = sigma5_part(sigma5());
    Fan x4 = x4_fan(examples::x4_insertions());
    Fan d = subdivide_domain(examples::phi_matrix(), part, x4);
    std::set<Vec, VecLess> expect;
    for (int i : {2, 3, 4, 5, 6, 7, 8, 9, 32, 630, 469, 109, 752, 667}) expect.insert(examples::y(i));
    CHECK(ray_set(d.rays) == expect);
    Fan s = star_subdivide(d, examples::y(745));
    int v = s.ray_index(examples::y(745));
    for (const auto& c : s.cones)
        if (std::find(c.begin(), c.end(), v) != c.end()) CHECK(is_smooth_cone(s.cone_rays(c)));
    FanMorphism phi = check_compatibility(examples::phi_matrix(), s, x4);
    CHECK(is_fibration(phi));
    KernelFan kf = kernel_fan(phi);
    REQUIRE(kf.ambient_rays.size() == 1);
    CHECK(kf.ambient_rays[0] == make_vec({-1, -1, 0, 0, 0}));
    CHECK(kf.lattice.basis == make_mat({{1, 1, 0, 0, 0}}));
    CHECK(kf.fan.rays == std::vector<Vec>{make_vec({-1})});

    MonomialMap mm = homogeneous_map(phi);
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> expected = {
        {0, {{4, 1}}},     {1, {{8, 1}}},     {2, {{7, 1}}},     {3, {{5, 1}}},
        {4, {{9, 1}}},     {16, {{6, 1}}},    {168, {{109, 1}}}, {170, {{32, 1}}},
        {334, {{3, 2}, {745, 1}, {752, 1}}},  {251, {{469, 1}}}, {276, {{630, 1}}}, {325, {{667, 1}}}};
    for (const auto& [zi, ys] : expected) {
        std::set<std::pair<Vec, Int>, std::less<>> want, got;
        for (auto [yi, e] : ys) want.insert({examples::y(yi), Int(e)});
        for (auto [r, e] : mm.images[static_cast<std::size_t>(x4.ray_index(examples::z(zi)))])
            got.insert({s.rays[static_cast<std::size_t>(r)], e});
        CHECK_MESSAGE(got == want, "z" << zi);
    }
}

TEST_CASE("identity morphism") {
    Fan p2 = Fan::make(2, {make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
    FanMorphism id = check_compatibility(identity(2), p2, p2);
    CHECK(id.certificate == p2.cones);
    CHECK(is_fibration(id));
    CHECK(kernel_fan(id).fan.rays.empty());
    MonomialMap mm = homogeneous_map(id);
    for (std::size_t i = 0; i < 3; ++i) {
        REQUIRE(mm.images[i].size() == 1);
        CHECK(mm.images[i][0] == std::pair<int, Int>(static_cast<int>(i), Int(1)));
    }
    CHECK(subdivide_domain(identity(2), p2, p2).cones == p2.cones);
}

TEST_CASE("no monomial form") {
    Fan diag = Fan::make(2, {make_vec({1, 1})}, {{0}});
    Fan pp = Fan::make(2, {make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1}), make_vec({0, -1})},
                       {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    FanMorphism f = check_compatibility(identity(2), diag, pp);
    CHECK_THROWS_AS(homogeneous_map(f), Error);
}

TEST_CASE("fibration search") {
    LatticePolytope d4 = LatticePolytope::hull(examples::delta4_vertices());
    auto c4 = search_fibrations(d4, 3);
    Sublattice want = saturation(kernel_basis(examples::beta_matrix(), 1), 4);
    bool found = false;
    for (const auto& c : c4) {
        CHECK(is_reflexive(c.slice.poly));
        CHECK(is_reflexive(c.projection));
        if (c.subspace.basis == want.basis) {
            found = true;
            CHECK(c.balanced);
            for (int i : {1, 2, 4, 16}) CHECK(c.subspace.contains(examples::z(i)));
        }
    }
    CHECK(found);

    LatticePolytope sq = LatticePolytope::hull({make_vec({1, 1}), make_vec({-1, 1}), make_vec({1, -1}), make_vec({-1, -1})});
    auto cs = search_fibrations(sq, 1);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].subspace.basis == make_mat({{0, 1}}));
    CHECK(cs[1].subspace.basis == make_mat({{1, 0}}));
}

TEST_CASE("fibration search in five dimensions" * doctest::timeout(600)) {
    LatticePolytope d5 = polar(LatticePolytope::hull(examples::delta5_polar_vertices()));
    auto c5 = search_fibrations(d5, 3);
    bool found = false;
    LatticePolytope wp = LatticePolytope::hull(examples::slice_vertices());
    for (const auto& c : c5) {
        CHECK(is_reflexive(c.slice.poly));
        CHECK(is_reflexive(c.projection));
        if (c.subspace.basis == make_mat({{0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}})) {
            found = true;
            CHECK(lattice_equivalent(c.slice.poly, wp));
        }
    }
    CHECK(found);
}

TEST_CASE("lattice equivalence") {
    LatticePolytope a = LatticePolytope::hull(examples::slice_vertices());
    Mat g = make_mat({{1, 1, 0}, {0, 1, 0}, {2, 0, 1}});
    std::vector<Vec> moved;
    for (const auto& v : a.vertices()) moved.push_back(mul(v, g));
    CHECK(lattice_equivalent(a, LatticePolytope::hull(moved)));
    CHECK_FALSE(lattice_equivalent(a, polar(a)));
}

TEST_CASE("property: star subdivision keeps support and refines") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int iter = 0; iter < 100; ++iter) {
        Fan f = random_plane_fan(rng);
        Vec r;
        do r = make_vec({d(rng), d(rng)});
        while (is_zero(r));
        r = primitive(r);
        Fan s = star_subdivide(f, r);
        for (const auto& v : s.rays) CHECK(content(v) == 1);
        if (f.ray_index(r) < 0) CHECK(s.cones.size() > f.cones.size());
        else CHECK(s.cones.size() == f.cones.size());
        CHECK(classify(s).complete);
        for (int t = 0; t < 5; ++t) {
            Vec p = make_vec({d(rng), d(rng)});
            RaySet c;
            CHECK(smallest_cone(s, {p}, c));
        }
    }
}

TEST_CASE("property: Mori generators are relations summing to zero") {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        Fan f = random_plane_fan(rng);
        for (const auto& g : mori_cone(f)) {
            Int s = 0;
            for (const auto& x : g) s += x;
            CHECK(s == 0);
            Vec rel(2, Int(0));
            for (std::size_t i = 0; i < f.rays.size(); ++i) rel = add(rel, scale(f.rays[i], g[i]));
            CHECK(is_zero(rel));
        }
    }
}

TEST_CASE("property: monomial maps agree with the lattice map on the torus") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<FanMorphism> maps = {check_compatibility(examples::alpha_matrix(), sigma5(), base2()),
                                     check_compatibility(examples::beta_matrix(), x4_fan(examples::x4_insertions()), line_fan()),
                                     final_phi()};
    for (int iter = 0; iter < 120; ++iter) {
        const FanMorphism& phi = maps[static_cast<std::size_t>(iter) % maps.size()];
        MonomialMap mm = homogeneous_map(phi);
        std::vector<Rat> zc;
        for (std::size_t i = 0; i < phi.domain.rays.size(); ++i) {
            int v;
            do v = d(rng);
            while (v == 0);
            zc.push_back(Rat(v, 1 + static_cast<int>(rng() % 3)));
        }
        Vec m(phi.codomain.rank);
        for (auto& x : m) x = d(rng);
        // character m evaluated on the image torus point, both ways
        Rat direct = 1;
        for (std::size_t i = 0; i < zc.size(); ++i) {
            Int e = dot(mul(phi.domain.rays[i], phi.matrix), m);
            for (Int k = 0; k < abs(e); ++k) direct *= e > 0 ? zc[i] : 1 / zc[i];
        }
        Rat via = 1;
        for (std::size_t j = 0; j < phi.codomain.rays.size(); ++j) {
            Rat w = 1;
            for (auto [r, c] : mm.images[j])
                for (Int k = 0; k < c; ++k) w *= zc[static_cast<std::size_t>(r)];
            Int e = dot(phi.codomain.rays[j], m);
            for (Int k = 0; k < abs(e); ++k) via *= e > 0 ? w : 1 / w;
        }
        CHECK(direct == via);
    }
}

TEST_CASE("property: kernel fan cones are the cones with zero image") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int iter = 0; iter < 100; ++iter) {
        Fan f = random_plane_fan(rng);
        Mat m;
        do m = make_mat({{d(rng)}, {d(rng)}});
        while (m[0][0] == 0 && m[1][0] == 0);
        Int g = gcd(m[0][0], m[1][0]);
        m[0][0] /= g;
        m[1][0] /= g;
        Fan s = subdivide_domain(m, f, line_fan());
        FanMorphism phi = check_compatibility(m, s, line_fan());
        KernelFan kf = kernel_fan(phi);
        std::set<Vec, VecLess> zero;
        for (const auto& r : s.rays)
            if (is_zero(mul(r, m))) zero.insert(r);
        CHECK(ray_set(kf.ambient_rays) == zero);
        CHECK(is_fibration(phi));
    }
}
