#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "example_data.hpp"
#include "toric/cy.hpp"
#include "toric/error.hpp"

using namespace toric;

namespace {

LatticePolytope delta5() { return polar(LatticePolytope::hull(examples::delta5_polar_vertices())); }

NefPartition running_partition() {
    auto v = examples::delta5_polar_vertices();
    return make_nef_partition(delta5(), std::vector<std::vector<Vec>>{{v.begin(), v.begin() + 4}, {v.begin() + 4, v.end()}});
}

std::vector<std::string> names_for(const std::vector<int>& idx) {
    std::vector<std::string> out;
    for (int i : idx) out.push_back("y" + std::to_string(i));
    return out;
}

std::vector<Vec> rays_for(const std::vector<int>& idx) {
    std::vector<Vec> out;
    for (int i : idx) out.push_back(examples::y(i));
    return out;
}

const std::vector<int> kTen = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};

std::set<Exps> support(const SparsePoly& p) {
    auto m = p.monomials();
    return {m.begin(), m.end()};
}

// Coefficient names of the complete intersection, keyed by their monomial.
const std::vector<std::pair<std::string, std::string>> kCoefficientMonomials = {
    {"a0", "y0^2*y4^12"},
    {"a1", "y1^2*y5^12"},
    {"a2", "y0*y1*y2*y3"},
    {"b0", "y8^3"},
    {"b1", "y9^2"},
    {"b2", "y3^2*y7^12"},
    {"b3", "y2^2*y6^12"},
    {"b4", "y4^6*y5^6*y6^6*y7^6"},
    {"b8", "y4*y5*y6*y7*y8*y9"},
};

// Exponent vector of the section m of part i on the ten vertex rays (indicator shift).
Exps vertex_exponents(int part, const Vec& m) {
    Exps e;
    for (int j = 0; j < 10; ++j) {
        int indicator = (j < 4) == (part == 0) ? 1 : 0;
        e.push_back((dot(m, examples::y(j)) + indicator).convert_to<int>());
    }
    return e;
}

std::string coefficient_name(int part, const Vec& m) {
    Exps e = vertex_exponents(part, m);
    for (const auto& [name, mono] : kCoefficientMonomials) {
        SparsePoly p = parse_poly(mono, names_for(kTen));
        if (p.monomials().front() == e) return name;
    }
    return "?";
}

// Polygon vertices in cyclic order.
std::vector<std::vector<Vec>> polygons() {
    return {{make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, -1})},
            {make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, 0}), make_vec({0, -1})},
            {make_vec({1, 0}), make_vec({1, 1}), make_vec({0, 1}), make_vec({-1, 0}), make_vec({-1, -1}), make_vec({0, -1})},
            {make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, -2})},
            {make_vec({1, 0}), make_vec({1, 1}), make_vec({0, 1}), make_vec({-1, 0}), make_vec({0, -1})}};
}

// D = sum of D_v over the part is Cartier and nef on the face fan of a polygon.
bool oracle_nef(const std::vector<Vec>& cyc, const std::vector<int>& assign, int part) {
    std::size_t k = cyc.size();
    for (std::size_t e = 0; e < k; ++e) {
        const Vec& a = cyc[e];
        const Vec& b = cyc[(e + 1) % k];
        long a0 = a[0].convert_to<long>(), a1 = a[1].convert_to<long>();
        long b0 = b[0].convert_to<long>(), b1 = b[1].convert_to<long>();
        long ra = assign[e] == part ? -1 : 0, rb = assign[(e + 1) % k] == part ? -1 : 0;
        long det = a0 * b1 - a1 * b0;
        long x = ra * b1 - a1 * rb, y = a0 * rb - ra * b0;
        if (x % det != 0 || y % det != 0) return false;
        x /= det;
        y /= det;
        for (std::size_t j = 0; j < k; ++j) {
            long v = x * cyc[j][0].convert_to<long>() + y * cyc[j][1].convert_to<long>();
            if (v < (assign[j] == part ? -1 : 0)) return false;
        }
    }
    return true;
}

// Batyrev's formula evaluated by brute-force point enumeration of P and its polar.
struct Brute {
    std::vector<Vec> verts, normals;

    static std::vector<Vec> box(const std::vector<Vec>& vs) {
        Vec lo = vs[0], hi = vs[0];
        for (const auto& v : vs)
            for (std::size_t i = 0; i < 4; ++i) {
                lo[i] = std::min(lo[i], v[i]);
                hi[i] = std::max(hi[i], v[i]);
            }
        std::vector<Vec> out;
        Vec x = lo;
        while (true) {
            out.push_back(x);
            std::size_t i = 0;
            while (i < 4 && x[i] == hi[i]) x[i] = lo[i], ++i;
            if (i == 4) return out;
            ++x[i];
        }
    }
    static std::vector<int> tight(const Vec& u, const std::vector<Vec>& ns, bool& inside) {
        std::vector<int> t;
        inside = true;
        for (std::size_t j = 0; j < ns.size(); ++j) {
            Int d = dot(u, ns[j]);
            if (d < -1) inside = false;
            if (d == -1) t.push_back(static_cast<int>(j));
        }
        return t;
    }
    static std::size_t affine_dim(const std::vector<Vec>& pts) {
        Mat m;
        for (std::size_t i = 1; i < pts.size(); ++i) m.push_back(sub(pts[i], pts[0]));
        return m.empty() ? 0 : rank(m);
    }
    Int side() const {
        std::map<std::vector<int>, long> interior, dual_interior;
        long count = 0;
        for (const auto& u : box(verts)) {
            bool in;
            auto t = tight(u, normals, in);
            if (!in) continue;
            ++count;
            ++interior[t];
        }
        for (const auto& w : box(normals)) {
            bool in;
            auto t = tight(w, verts, in);
            if (in) ++dual_interior[t];
        }
        Int h = count - 5;
        for (const auto& [t, n] : interior) {
            std::vector<int> vs;
            std::vector<Vec> pts;
            for (std::size_t i = 0; i < verts.size(); ++i)
                if (std::all_of(t.begin(), t.end(), [&](int j) { return dot(verts[i], normals[static_cast<std::size_t>(j)]) == -1; })) {
                    vs.push_back(static_cast<int>(i));
                    pts.push_back(verts[i]);
                }
            if (t.empty()) continue;
            std::size_t d = affine_dim(pts);
            if (d == 3) h -= n;
            if (d == 2) {
                auto it = dual_interior.find(vs);
                h += Int(n) * (it == dual_interior.end() ? 0 : it->second);
            }
        }
        return h;
    }
};

HodgePair brute_hodge(const std::vector<Vec>& delta_vertices, const std::vector<Vec>& polar_vertices) {
    return {Brute{polar_vertices, delta_vertices}.side(), Brute{delta_vertices, polar_vertices}.side()};
}

Int running_oracle(long m, long n) {
    if (n < 2 * m) return 0;
    Int f = factorial(static_cast<int>(2 * m)) * factorial(static_cast<int>(6 * n));
    Int g = factorial(static_cast<int>(m));
    return f / (g * g * g * g * factorial(static_cast<int>(2 * n)) * factorial(static_cast<int>(3 * n)) *
                factorial(static_cast<int>(n - 2 * m)));
}

Int reindexed_oracle(int m, int n) {
    Int g = factorial(m);
    return factorial(2 * m) * factorial(12 * m + 6 * n) /
           (g * g * g * g * factorial(4 * m + 2 * n) * factorial(6 * m + 3 * n) * factorial(n));
}

GkzDegrees running_degrees() { return gkz_degrees(running_partition(), coefficient_name); }

int modulus_index(const GkzDegrees& d, const char* text) {
    ParamScalar b = parse_scalar(text);
    for (std::size_t g = 0; g < d.moduli(); ++g)
        if (d.moduli_monomials[g] == b) return static_cast<int>(g);
    return -1;
}

}  // namespace

TEST_CASE("running nef-partition") {
    NefPartition np = running_partition();
    REQUIRE(np.parts.size() == 2);
    CHECK(np.delta_i[0].ambient_points().size() == 3);
    CHECK(np.delta_i[1].ambient_points().size() == 9);
    CHECK(is_reflexive(np.nabla));

    auto g = nef_ci_polynomials(np, rays_for(kTen), MonomialSelection::All, {}, names_for(kTen));
    REQUIRE(g.size() == 2);
    CHECK(support(g[0]) == support(parse_poly("a0*y0^2*y4^12 + a1*y1^2*y5^12 + a2*y0*y1*y2*y3", names_for(kTen))));
    CHECK(support(g[1]) ==
          support(parse_poly("b4*y4^6*y5^6*y6^6*y7^6 + b5*y4^4*y5^4*y6^4*y7^4*y8 + b3*y2^2*y6^12 + b2*y3^2*y7^12"
                             " + b7*y4^3*y5^3*y6^3*y7^3*y9 + b6*y4^2*y5^2*y6^2*y7^2*y8^2 + b8*y4*y5*y6*y7*y8*y9"
                             " + b0*y8^3 + b1*y9^2",
                             names_for(kTen))));
}

TEST_CASE("vertices and origin with gauged coefficients") {
    NefPartition np = running_partition();
    std::vector<CoefficientMap> coef(2);
    for (int i = 0; i < 2; ++i)
        for (const auto& m : selected_points(np.delta_i[static_cast<std::size_t>(i)], MonomialSelection::VerticesOrigin)) {
            std::string n = coefficient_name(i, m);
            coef[static_cast<std::size_t>(i)][m] = n == "b3" ? ParamScalar::param("xi0") : n == "b4" ? ParamScalar::param("xi1") : ParamScalar(1);
        }
    auto g = nef_ci_polynomials(np, rays_for(kTen), MonomialSelection::VerticesOrigin, coef, names_for(kTen));
    CHECK(g[0] == parse_poly("y0^2*y4^12 + y1^2*y5^12 + y0*y1*y2*y3", names_for(kTen)));
    CHECK(g[1] == parse_poly("xi1*y4^6*y5^6*y6^6*y7^6 + xi0*y2^2*y6^12 + y3^2*y7^12 + y4*y5*y6*y7*y8*y9 + y8^3 + y9^2",
                             names_for(kTen)));

    // partial resolution: the vertex rays y0, y1 and the fifteen rays of the fibration domain
    std::vector<int> idx = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 32, 630, 469, 109, 752, 667, 745};
    auto vs = names_for(idx);
    std::vector<CoefficientMap> coef15(2);
    for (int i = 0; i < 2; ++i)
        for (const auto& [m, c] : coef[static_cast<std::size_t>(i)]) coef15[static_cast<std::size_t>(i)][m] = c;
    auto h = nef_ci_polynomials(np, rays_for(idx), MonomialSelection::VerticesOrigin, coef15, vs);
    std::map<std::string, SparsePoly> chart = {{"y0", SparsePoly::constant(vs, 1)}, {"y1", SparsePoly::constant(vs, 1)}};
    CHECK(substitute(h[0], chart) == parse_poly("y5^12*y109 + y4^12*y32 + y2*y3*y745", vs));
    // the xi1 exponents differ from the printed display; these are the homogeneous ones
    CHECK(substitute(h[1], chart) ==
          parse_poly("y3^2*y7^12*y109^11*y469^8*y630^4*y32^11*y667^6*y752^2*y745"
                     " + xi1*y4^6*y5^6*y6^6*y7^6*y109^6*y469^4*y630^2*y32^6*y667^3*y752 + xi0*y2^2*y6^12*y745"
                     " + y4*y5*y6*y7*y8*y9*y109*y469*y630*y32*y667*y752 + y8^3*y469*y630^2*y752 + y9^2*y667*y752",
                     vs));
    CHECK_THROWS_AS(nef_ci_polynomials(np, {make_vec({1, 1, 1, 1, 1})}, MonomialSelection::All), Error);
}

TEST_CASE("dual nef-partition") {
    NefPartition np = running_partition();
    NefPartition d = dual_nef_partition(np);
    std::vector<Vec> pieces;
    for (const auto& p : np.delta_i)
        for (const auto& v : p.ambient_vertices()) pieces.push_back(v);
    CHECK(polar(d.delta) == LatticePolytope::hull(pieces));
    CHECK(d.parts.size() == 2);
    NefPartition dd = dual_nef_partition(d);
    CHECK(dd.delta == np.delta);
    CHECK(dd.parts == np.parts);

    LatticePolytope sq = LatticePolytope::hull({make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, 0}), make_vec({0, -1})});
    NefPartition one = make_nef_partition(sq, std::vector<int>(4, 0));
    CHECK(one.nabla == polar(sq));
    NefPartition od = dual_nef_partition(one);
    CHECK(od.delta == polar(sq));
    CHECK(od.nabla == sq);
}

TEST_CASE("nef-partition identities over all splits of reflexive polygons") {
    int valid = 0, invalid = 0;
    for (const auto& cyc : polygons()) {
        LatticePolytope dp = LatticePolytope::hull(cyc);
        LatticePolytope delta = polar(dp);
        std::size_t k = cyc.size();
        std::size_t total = 1;
        for (std::size_t i = 0; i < k; ++i) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<int> assign(k);
            std::size_t c = code;
            int parts = 0;
            for (std::size_t i = 0; i < k; ++i) {
                assign[i] = static_cast<int>(c % 3);
                c /= 3;
                parts = std::max(parts, assign[i] + 1);
            }
            std::vector<bool> seen(static_cast<std::size_t>(parts), false);
            for (int a : assign) seen[static_cast<std::size_t>(a)] = true;
            if (std::find(seen.begin(), seen.end(), false) != seen.end()) continue;
            bool nef = true;
            for (int p = 0; p < parts; ++p) nef = nef && oracle_nef(cyc, assign, p);

            std::vector<std::vector<Vec>> byvec(static_cast<std::size_t>(parts));
            for (std::size_t i = 0; i < k; ++i) byvec[static_cast<std::size_t>(assign[i])].push_back(cyc[i]);
            if (!nef) {
                ++invalid;
                CHECK_THROWS_AS(make_nef_partition(delta, byvec), Error);
                continue;
            }
            ++valid;
            NefPartition np = make_nef_partition(delta, byvec);
            std::vector<Vec> nabla_union, delta_union;
            std::vector<std::vector<Vec>> nv, dv;
            for (std::size_t i = 0; i < np.parts.size(); ++i) {
                nv.push_back(np.nabla_i[i].ambient_vertices());
                dv.push_back(np.delta_i[i].ambient_vertices());
                nabla_union.insert(nabla_union.end(), nv.back().begin(), nv.back().end());
                delta_union.insert(delta_union.end(), dv.back().begin(), dv.back().end());
            }
            CHECK(LatticePolytope::hull(nabla_union) == dp);
            CHECK(LatticePolytope::hull(delta_union) == polar(np.nabla));
            std::vector<Vec> dsum{make_vec({0, 0})}, nsum{make_vec({0, 0})};
            for (std::size_t i = 0; i < nv.size(); ++i) {
                std::vector<Vec> a, b;
                for (const auto& x : dsum)
                    for (const auto& y : dv[i]) a.push_back(add(x, y));
                for (const auto& x : nsum)
                    for (const auto& y : nv[i]) b.push_back(add(x, y));
                dsum = a;
                nsum = b;
            }
            CHECK(LatticePolytope::hull(dsum) == delta);
            CHECK(LatticePolytope::hull(nsum) == np.nabla);
            NefPartition dd = dual_nef_partition(dual_nef_partition(np));
            CHECK(dd.parts == np.parts);

            // exponents follow the homogenization rule on the vertex rays
            auto g = nef_ci_polynomials(np, cyc, MonomialSelection::All);
            for (std::size_t i = 0; i < g.size(); ++i) {
                auto pts = selected_points(np.delta_i[i], MonomialSelection::All);
                std::set<Exps> expect;
                for (const auto& m : pts) {
                    Exps e;
                    for (std::size_t j = 0; j < k; ++j) {
                        Int x = dot(m, cyc[j]) + (assign[j] == static_cast<int>(i) ? 1 : 0);
                        CHECK(x >= 0);
                        e.push_back(x.convert_to<int>());
                    }
                    expect.insert(e);
                }
                CHECK(support(g[i]) == expect);
            }
        }
    }
    CHECK(valid >= 100);
    CHECK(invalid > 0);
}

TEST_CASE("anticanonical hypersurface") {
    LatticePolytope d4 = LatticePolytope::hull(examples::delta4_vertices());
    std::vector<int> idx = {0, 1, 2, 3, 4, 16};
    std::vector<Vec> rays;
    std::vector<std::string> vs;
    for (int i : idx) {
        rays.push_back(examples::z(i));
        vs.push_back("z" + std::to_string(i));
    }
    CHECK(anticanonical_polynomial(d4, rays, MonomialSelection::All, {}, vs).terms().size() == 11);
    SparsePoly h = anticanonical_polynomial(d4, rays, MonomialSelection::Simplified, {}, vs);
    CHECK(h.terms().size() == 8);
    CHECK(support(h) == support(parse_poly("a0*z0^24*z16^12 + a5*z0^12*z3^12*z16^12 + a4*z3^24*z16^12"
                                           " + a6*z0^6*z2^6*z3^6*z16^6 + a1*z2^12 + a10*z0*z1*z2*z3*z4*z16"
                                           " + a2*z1^3 + a3*z4^2",
                                           vs)));
    SparsePoly hv = anticanonical_polynomial(d4, rays, MonomialSelection::VerticesOrigin, {}, vs);
    CHECK(hv.terms().size() == 6);

    LatticePolytope seg = LatticePolytope::hull({make_vec({-1}), make_vec({1})});
    SparsePoly line = anticanonical_polynomial(seg, {make_vec({1}), make_vec({-1})}, MonomialSelection::All, {}, {"x", "y"});
    CHECK(support(line) == support(parse_poly("x^2 + x*y + y^2", {"x", "y"})));
    CHECK_THROWS_AS(anticanonical_polynomial(seg, {make_vec({2})}, MonomialSelection::All), Error);
}

TEST_CASE("Batyrev Hodge numbers") {
    auto d4v = examples::delta4_vertices(), d4p = examples::delta4_polar_vertices();
    HodgePair h = batyrev_hodge(LatticePolytope::hull(d4v));
    CHECK(h.h21 == 3);
    CHECK(h.h11 == 243);
    HodgePair b = brute_hodge(d4v, d4p);
    CHECK(b.h11 == h.h11);
    CHECK(b.h21 == h.h21);
    HodgePair m = batyrev_hodge(LatticePolytope::hull(d4p));
    CHECK(m.h11 == h.h21);
    CHECK(m.h21 == h.h11);

    std::vector<Vec> small = {make_vec({1, 0, 0, 0}), make_vec({0, 1, 0, 0}), make_vec({0, 0, 1, 0}),
                              make_vec({0, 0, 0, 1}), make_vec({-1, -1, -1, -1})};
    LatticePolytope quintic = polar(LatticePolytope::hull(small));
    HodgePair q = batyrev_hodge(quintic);
    HodgePair qb = brute_hodge(quintic.vertices(), small);
    CHECK(qb.h11 == 1);
    CHECK(qb.h21 == 101);
    CHECK(q.h11 == qb.h11);
    CHECK(q.h21 == qb.h21);
    CHECK_THROWS_AS(batyrev_hodge(LatticePolytope::hull(examples::delta3_vertices())), Error);
}

TEST_CASE("GKZ degrees of the running example") {
    GkzDegrees d = running_degrees();
    std::vector<std::string> order = {"a0", "a1", "a2", "b0", "b1", "b2", "b3", "b4", "b8"};
    std::set<std::vector<long>> rows;
    for (std::size_t g = 0; g < d.moduli(); ++g) {
        std::vector<long> row;
        for (const auto& n : order) {
            auto it = std::find(d.names.begin(), d.names.end(), n);
            REQUIRE(it != d.names.end());
            row.push_back(d.columns[static_cast<std::size_t>(it - d.names.begin())][g].convert_to<long>());
        }
        rows.insert(row);
    }
    CHECK(rows == std::set<std::vector<long>>{{0, 0, 0, 2, 3, 0, 0, 1, -6}, {1, 1, -2, 0, 0, 1, 1, -2, 0}});
    CHECK(modulus_index(d, "b0^2*b1^3*b4/b8^6") >= 0);
    CHECK(modulus_index(d, "a0*a1*b2*b3/(a2^2*b4^2)") >= 0);
    std::vector<bool> origins;
    for (const auto& n : order) origins.push_back(d.origin_flags[static_cast<std::size_t>(std::find(d.names.begin(), d.names.end(), n) - d.names.begin())]);
    CHECK(origins == std::vector<bool>{false, false, true, false, false, false, false, false, true});
    for (std::size_t g = 0; g < d.moduli(); ++g)
        for (int part = 0; part < 2; ++part) {
            Int s = 0;
            for (std::size_t j = 0; j < d.columns.size(); ++j)
                if (d.part[j] == part) s += d.columns[j][g];
            CHECK(s == 0);
        }
}

TEST_CASE("GKZ coefficients") {
    GkzDegrees d = running_degrees();
    int b1 = modulus_index(d, "a0*a1*b2*b3/(a2^2*b4^2)");
    int b0 = modulus_index(d, "b0^2*b1^3*b4/b8^6");
    REQUIRE(b0 >= 0);
    REQUIRE(b1 >= 0);
    auto at = [&](long m, long n) {
        std::vector<Int> k(2);
        k[static_cast<std::size_t>(b1)] = m;
        k[static_cast<std::size_t>(b0)] = n;
        return gkz_coefficient(d, k);
    };
    CHECK(at(0, 0) == 1);
    CHECK(at(1, 2) == 55440);
    CHECK(at(1, 0) == 0);
    for (long m = 0; m < 12; ++m)
        for (long n = 0; n < 12; ++n) {
            Int c = at(m, n);
            CHECK(c == running_oracle(m, n));
            CHECK(c >= 0);
            CHECK((c == 0) == (n < 2 * m));
        }

    GkzSeries s = gkz_series_reindexed(d, 10);
    CHECK(s.free == b1);
    CHECK(s.shifted == b0);
    CHECK(s.shift == 2);
    CHECK(s.table.at({1, 0}) == 55440);
    CHECK(s.table.at({0, 1}) == 60);
    CHECK(s.table.at({0, 0}) == 1);
    for (const auto& [mn, c] : s.table) CHECK(c == reindexed_oracle(mn.first, mn.second));
    for (int m = 0; m <= 10; ++m) {
        Int g = factorial(m);
        CHECK(s.table.at({m, 0}) == factorial(2 * m) * factorial(12 * m) / (g * g * g * g * factorial(4 * m) * factorial(6 * m)));
    }
}

TEST_CASE("GKZ degrees of a hypersurface") {
    Fan p2 = face_fan(LatticePolytope::hull({make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, -1})}));
    GkzDegrees d = gkz_degrees(p2, {{0, 1, 2}});
    REQUIRE(d.moduli() == 1);
    std::vector<long> col;
    for (const auto& c : d.columns) col.push_back(c[0].convert_to<long>());
    CHECK(col == std::vector<long>{1, 1, 1, -3});
    CHECK(d.moduli_monomials[0] == parse_scalar("a0*a1*a2/a3^3"));
    CHECK_THROWS_AS(gkz_series_reindexed(d, 3), Error);
    CHECK_THROWS_AS(gkz_degrees(p2, {{0, 1}}), Error);
}

TEST_CASE("gauged hypersurface on the resolved base") {
    LatticePolytope d4 = LatticePolytope::hull(examples::delta4_vertices());
    std::vector<int> six = {0, 1, 2, 3, 4, 16};
    std::vector<std::pair<std::string, std::string>> gauge = {
        {"z0^24*z16^12", "B/24"},         {"z0^12*z3^12*z16^12", "-psi_s/12"}, {"z3^24*z16^12", "B/24"},
        {"z0^6*z2^6*z3^6*z16^6", "-psi1/6"}, {"z2^12", "1/12"},               {"z0*z1*z2*z3*z4*z16", "-psi0"},
        {"z1^3", "1/3"},                  {"z4^2", "1/2"}};
    std::vector<std::string> vs6;
    for (int i : six) vs6.push_back("z" + std::to_string(i));
    CoefficientMap coef;
    for (const auto& m : selected_points(hull_in_span(d4.vertices(), 4), MonomialSelection::Simplified)) {
        Exps e;
        for (int i : six) e.push_back((dot(m, examples::z(i)) + 1).convert_to<int>());
        for (const auto& [mono, c] : gauge)
            if (parse_poly(mono, vs6).monomials().front() == e) coef[m] = parse_scalar(c);
    }
    REQUIRE(coef.size() == 8);

    std::vector<Vec> rays;
    std::vector<std::string> vs;
    for (int i : examples::x4_ray_names()) {
        rays.push_back(examples::z(i));
        vs.push_back("z" + std::to_string(i));
    }
    SparsePoly h = anticanonical_polynomial(d4, rays, MonomialSelection::Simplified, coef, vs);
    SparsePoly h2 = parse_poly(std::string("(") + examples::kQ2 + ")*z334 + " + examples::kR2, vs);
    SparsePoly shift = parse_poly("(psi_s + B)/12*(z0*z3*z16)^12*z168*z170", vs);
    CHECK(h == h2 - shift);
}
