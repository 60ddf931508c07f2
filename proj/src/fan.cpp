#include "toric/fan.hpp"

#include <algorithm>
#include <set>

#include "toric/dd.hpp"

namespace toric {

bool ConeData::contains(const Vec& x) const {
    for (const auto& e : equations)
        if (dot(x, e) != 0) return false;
    for (const auto& f : facets)
        if (dot(x, f) < 0) return false;
    return true;
}

bool ConeData::relint_contains(const Vec& x) const {
    for (const auto& e : equations)
        if (dot(x, e) != 0) return false;
    for (const auto& f : facets)
        if (dot(x, f) <= 0) return false;
    return true;
}

ConeData cone_data(const std::vector<Vec>& rays, std::size_t n) {
    ConeData c;
    if (rays.empty()) {
        c.equations = identity(n);
        return c;
    }
    Sublattice L = saturation(rays, n);
    c.dim = L.rank();
    c.equations = right_kernel(L.basis, n);
    Mat Y;
    for (const auto& r : rays) Y.push_back(L.coordinates(r));
    Mat C = right_inverse(L.basis, n);
    for (const auto& a : extreme_rays(Y, c.dim)) {
        Vec f(n, Int(0));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < c.dim; ++k) f[j] += C[j][k] * a[k];
        RaySet on;
        for (std::size_t i = 0; i < Y.size(); ++i)
            if (dot(Y[i], a) == 0) on.push_back(static_cast<int>(i));
        c.facets.push_back(std::move(f));
        c.facet_rays.push_back(std::move(on));
    }
    return c;
}

namespace {

std::vector<RaySet> cone_faces(const std::vector<Vec>& all_rays, const RaySet& cone, std::size_t n) {
    std::set<RaySet> out;
    out.insert({});
    out.insert(cone);
    std::vector<Vec> rs;
    for (int i : cone) rs.push_back(all_rays[static_cast<std::size_t>(i)]);
    if (rank(rs) == rs.size()) {
        std::size_t k = cone.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
            RaySet s;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1) s.push_back(cone[i]);
            out.insert(s);
        }
        return {out.begin(), out.end()};
    }
    ConeData cd = cone_data(rs, n);
    std::vector<RaySet> facets;
    for (const auto& fr : cd.facet_rays) {
        RaySet g;
        for (int i : fr) g.push_back(cone[static_cast<std::size_t>(i)]);
        facets.push_back(g);
    }
    std::vector<RaySet> queue(facets.begin(), facets.end());
    for (auto& f : facets) out.insert(f);
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (const auto& f : facets) {
            RaySet inter;
            std::set_intersection(queue[qi].begin(), queue[qi].end(), f.begin(), f.end(), std::back_inserter(inter));
            if (out.insert(inter).second) queue.push_back(inter);
        }
    return {out.begin(), out.end()};
}

std::size_t rank_of(const std::vector<Vec>& vs) {
    std::vector<Vec> nz;
    for (const auto& v : vs)
        if (!is_zero(v)) nz.push_back(v);
    return nz.empty() ? 0 : rank(nz);
}

}  // namespace

Fan Fan::make(std::size_t rank, std::vector<Vec> rays, std::vector<RaySet> cones) {
    Fan f;
    f.rank = rank;
    std::set<Vec, VecLess> seen;
    for (const auto& r : rays) {
        if (r.size() != rank) throw Error("dimension", "ray of wrong rank", to_string(r));
        if (content(r) != 1) throw Error("not_primitive", "ray generators must be primitive", to_string(r));
        if (!seen.insert(r).second) throw Error("duplicate_ray", "duplicate ray", to_string(r));
    }
    f.rays = std::move(rays);
    std::set<RaySet> cs;
    for (auto c : cones) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (int i : c)
            if (i < 0 || static_cast<std::size_t>(i) >= f.rays.size()) throw Error("bad_cone", "ray index out of range");
        cs.insert(c);
    }
    // drop cones whose ray set is contained in another cone's
    for (const auto& c : cs) {
        bool sub = false;
        for (const auto& d : cs)
            if (d != c && std::includes(d.begin(), d.end(), c.begin(), c.end())) { sub = true; break; }
        if (!sub) f.cones.push_back(c);
    }
    return f;
}

std::vector<Vec> Fan::cone_rays(const RaySet& c) const {
    std::vector<Vec> out;
    for (int i : c) out.push_back(rays[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<RaySet> Fan::all_cones() const {
    std::set<RaySet> out;
    for (const auto& c : cones)
        for (auto& f : cone_faces(rays, c, rank)) out.insert(f);
    return {out.begin(), out.end()};
}

int Fan::ray_index(const Vec& v) const {
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (rays[i] == v) return static_cast<int>(i);
    return -1;
}

Fan face_fan(const LatticePolytope& p) {
    if (!is_reflexive(p)) throw Error("not_reflexive", "face fan requires a reflexive polytope");
    std::vector<RaySet> cones;
    for (std::size_t f = 0; f < p.facets().size(); ++f) {
        RaySet c;
        for (std::size_t i = 0; i < p.vertices().size(); ++i)
            if (dot(p.vertices()[i], p.facets()[f].normal) == -p.facets()[f].offset) c.push_back(static_cast<int>(i));
        cones.push_back(c);
    }
    return Fan::make(p.rank(), p.vertices(), cones);
}

Fan normal_fan(const LatticePolytope& p) {
    std::vector<Vec> rays;
    for (const auto& f : p.facets()) rays.push_back(f.normal);
    std::vector<RaySet> cones;
    for (const auto& v : p.vertices()) cones.push_back(p.tight_facets(v));
    return Fan::make(p.rank(), rays, cones);
}

Fan star_subdivide(const Fan& f, const Vec& ray) {
    if (content(ray) != 1) throw Error("not_primitive", "subdivision ray must be primitive", to_string(ray));
    if (f.ray_index(ray) >= 0) return f;
    std::vector<Vec> rays = f.rays;
    rays.push_back(ray);
    int idx = static_cast<int>(rays.size()) - 1;
    std::vector<RaySet> cones;
    bool hit = false;
    for (const auto& c : f.cones) {
        ConeData cd = cone_data(f.cone_rays(c), f.rank);
        if (!cd.contains(ray)) {
            cones.push_back(c);
            continue;
        }
        hit = true;
        for (std::size_t k = 0; k < cd.facets.size(); ++k) {
            if (dot(cd.facets[k], ray) == 0) continue;
            RaySet nc;
            for (int i : cd.facet_rays[k]) nc.push_back(c[static_cast<std::size_t>(i)]);
            nc.push_back(idx);
            cones.push_back(nc);
        }
        if (cd.dim == 1) throw Error("internal", "ray already generates a cone");
    }
    if (!hit) throw Error("outside_support", "ray outside the support of the fan", to_string(ray));
    return Fan::make(f.rank, rays, cones);
}

bool is_smooth_cone(const std::vector<Vec>& rays) {
    if (rays.empty()) return true;
    if (rank(rays) != rays.size()) return false;
    Sublattice L = saturation(rays, rays.front().size());
    Mat Y;
    for (const auto& r : rays) Y.push_back(L.coordinates(r));
    return abs(det(Y)) == 1;
}

FanClass classify(const Fan& f, const LatticePolytope* delta) {
    FanClass k;
    k.simplicial = std::all_of(f.cones.begin(), f.cones.end(),
                               [&](const RaySet& c) { return rank(f.cone_rays(c)) == c.size(); });
    k.smooth = k.simplicial && std::all_of(f.cones.begin(), f.cones.end(),
                                           [&](const RaySet& c) { return is_smooth_cone(f.cone_rays(c)); });
    bool complete = !f.cones.empty();
    std::map<RaySet, int> walls;
    for (const auto& c : f.cones) {
        ConeData cd = cone_data(f.cone_rays(c), f.rank);
        if (cd.dim != f.rank) { complete = false; break; }
        for (const auto& fr : cd.facet_rays) {
            RaySet w;
            for (int i : fr) w.push_back(c[static_cast<std::size_t>(i)]);
            ++walls[w];
        }
    }
    if (complete)
        for (const auto& [w, n] : walls)
            if (n != 2) { complete = false; break; }
    k.complete = complete;
    if (delta) {
        LatticePolytope dp = polar(*delta);
        const auto& bd = dp.boundary_points();
        k.crepant = std::all_of(f.rays.begin(), f.rays.end(), [&](const Vec& r) {
            return std::binary_search(bd.begin(), bd.end(), r, VecLess());
        });
    }
    return k;
}

namespace {

void pull_triangulate(const Fan& f, const RaySet& c, std::vector<RaySet>& out) {
    auto rs = f.cone_rays(c);
    if (rank(rs) == c.size()) {
        out.push_back(c);
        return;
    }
    int v = c.front();
    ConeData cd = cone_data(rs, f.rank);
    for (const auto& fr : cd.facet_rays) {
        RaySet face;
        for (int i : fr) face.push_back(c[static_cast<std::size_t>(i)]);
        if (std::find(face.begin(), face.end(), v) != face.end()) continue;
        std::vector<RaySet> sub;
        pull_triangulate(f, face, sub);
        for (auto& s : sub) {
            s.push_back(v);
            std::sort(s.begin(), s.end());
            out.push_back(s);
        }
    }
}

}  // namespace

std::vector<Vec> mori_cone(const Fan& f0) {
    if (!classify(f0).complete) throw Error("not_complete", "Mori cone requires a complete fan");
    std::vector<RaySet> tri;
    for (const auto& c : f0.cones) pull_triangulate(f0, c, tri);
    Fan f = Fan::make(f0.rank, f0.rays, tri);
    std::size_t N = f.rays.size(), n = f.rank;
    std::set<Vec, VecLess> rels;
    std::map<RaySet, std::vector<std::pair<int, int>>> wall_sides;  // wall -> (cone, opposite ray)
    for (std::size_t ci = 0; ci < f.cones.size(); ++ci) {
        const auto& c = f.cones[ci];
        for (std::size_t k = 0; k < c.size(); ++k) {
            RaySet w;
            for (std::size_t j = 0; j < c.size(); ++j)
                if (j != k) w.push_back(c[j]);
            wall_sides[w].push_back({static_cast<int>(ci), c[k]});
        }
    }
    for (const auto& [w, sides] : wall_sides) {
        if (sides.size() != 2) throw Error("internal", "wall not shared by two cones");
        int a = sides[0].second, b = sides[1].second;
        Mat rows{f.rays[static_cast<std::size_t>(a)], f.rays[static_cast<std::size_t>(b)]};
        for (int i : w) rows.push_back(f.rays[static_cast<std::size_t>(i)]);
        Mat K = kernel_basis(rows, n);
        if (K.size() != 1) throw Error("internal", "wall relation not unique");
        Vec k = K[0];
        if (k[0] < 0) k = neg(k);
        Vec rel(N, Int(0));
        rel[static_cast<std::size_t>(a)] = k[0];
        rel[static_cast<std::size_t>(b)] = k[1];
        for (std::size_t j = 0; j < w.size(); ++j) rel[static_cast<std::size_t>(w[j])] = k[j + 2];
        rels.insert(rel);
    }
    Mat rayM(f.rays.begin(), f.rays.end());
    Mat K = kernel_basis(rayM, n);
    std::size_t r = K.size();
    std::vector<Vec> out;
    if (r == 0) return out;
    Sublattice RL{K, N};
    Mat Y;
    for (const auto& rel : rels) Y.push_back(RL.coordinates(rel));
    if (rank(Y) < r) throw Error("not_projective", "wall relations do not span the relation space");
    Mat F = extreme_rays(Y, r);
    std::set<Vec, VecLess> gens;
    for (const auto& y : extreme_rays(F, r)) {
        Vec c = primitive(mul(y, K));
        Int s = 0;
        for (const auto& x : c) s += x;
        c.push_back(-s);
        gens.insert(c);
    }
    return {gens.begin(), gens.end()};
}

bool smallest_cone(const Fan& f, const std::vector<Vec>& vs, RaySet& out) {
    for (const auto& c : f.cones) {
        auto rs = f.cone_rays(c);
        ConeData cd = cone_data(rs, f.rank);
        if (!std::all_of(vs.begin(), vs.end(), [&](const Vec& v) { return cd.contains(v); })) continue;
        std::vector<bool> keep(c.size(), true);
        for (std::size_t k = 0; k < cd.facets.size(); ++k) {
            bool vanish = std::all_of(vs.begin(), vs.end(), [&](const Vec& v) { return dot(v, cd.facets[k]) == 0; });
            if (!vanish) continue;
            std::vector<bool> on(c.size(), false);
            for (int i : cd.facet_rays[k]) on[static_cast<std::size_t>(i)] = true;
            for (std::size_t i = 0; i < c.size(); ++i) keep[i] = keep[i] && on[i];
        }
        out.clear();
        for (std::size_t i = 0; i < c.size(); ++i)
            if (keep[i]) out.push_back(c[i]);
        return true;
    }
    return false;
}

FanMorphism check_compatibility(const Mat& matrix, const Fan& domain, const Fan& codomain) {
    if (matrix.size() != domain.rank || (!matrix.empty() && matrix.front().size() != codomain.rank))
        throw Error("dimension", "matrix does not map the domain lattice to the codomain lattice");
    FanMorphism phi{matrix, domain, codomain, {}};
    for (const auto& c : domain.cones) {
        std::vector<Vec> imgs;
        for (const auto& r : domain.cone_rays(c)) imgs.push_back(mul(r, matrix));
        RaySet target;
        if (!smallest_cone(codomain, imgs, target)) {
            std::string ctx;
            for (const auto& r : domain.cone_rays(c)) ctx += to_string(r);
            throw Error("incompatible", "image of a domain cone is not contained in a single codomain cone", ctx);
        }
        phi.certificate.push_back(target);
    }
    return phi;
}

Fan subdivide_domain(const Mat& matrix, const Fan& domain, const Fan& codomain) {
    std::size_t n = domain.rank;
    std::vector<ConeData> cod;
    for (const auto& c : codomain.cones) cod.push_back(cone_data(codomain.cone_rays(c), codomain.rank));
    std::vector<std::vector<Vec>> pieces;
    for (const auto& c : domain.cones) {
        auto rs = domain.cone_rays(c);
        for (const auto& r : rs) {
            Vec img = mul(r, matrix);
            if (!std::any_of(cod.begin(), cod.end(), [&](const ConeData& cd) { return cd.contains(img); }))
                throw Error("support", "domain support does not map into the codomain support", to_string(r));
        }
        Sublattice L = saturation(rs, n);
        std::size_t s = L.rank();
        Mat Y;
        for (const auto& r : rs) Y.push_back(L.coordinates(r));
        Mat sigma_f = extreme_rays(Y, s);
        Mat BM = mul(L.basis, matrix);  // s x m
        std::vector<std::vector<Vec>> local;
        for (const auto& cd : cod) {
            Mat ineq = sigma_f;
            for (const auto& f : cd.facets) {
                Vec w(s);
                for (std::size_t k = 0; k < s; ++k) w[k] = dot(BM[k], f);
                ineq.push_back(w);
            }
            for (const auto& e : cd.equations) {
                Vec w(s);
                for (std::size_t k = 0; k < s; ++k) w[k] = dot(BM[k], e);
                ineq.push_back(w);
                ineq.push_back(neg(w));
            }
            std::vector<Vec> amb;
            for (const auto& y : extreme_rays(ineq, s)) amb.push_back(primitive(L.ambient(y)));
            if (amb.empty() || rank(amb) != s) continue;
            std::sort(amb.begin(), amb.end(), VecLess());
            local.push_back(amb);
        }
        // keep maximal pieces
        std::vector<ConeData> lcd;
        for (const auto& p : local) lcd.push_back(cone_data(p, n));
        for (std::size_t i = 0; i < local.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < local.size() && !dominated; ++j) {
                if (i == j || local[i] == local[j]) continue;
                if (std::all_of(local[i].begin(), local[i].end(), [&](const Vec& v) { return lcd[j].contains(v); }))
                    dominated = true;
            }
            if (!dominated) pieces.push_back(local[i]);
        }
    }
    // rays no piece uses are dropped; survivors keep their order, new rays follow
    std::set<Vec, VecLess> used, extra;
    for (const auto& p : pieces)
        for (const auto& v : p) (domain.ray_index(v) < 0 ? extra : used).insert(v);
    std::vector<Vec> rays;
    for (const auto& r : domain.rays)
        if (used.count(r)) rays.push_back(r);
    rays.insert(rays.end(), extra.begin(), extra.end());
    Fan tmp;
    tmp.rays = rays;
    std::vector<RaySet> cones;
    for (const auto& p : pieces) {
        RaySet c;
        for (const auto& v : p) c.push_back(tmp.ray_index(v));
        cones.push_back(c);
    }
    return Fan::make(n, rays, cones);
}

bool is_fibration(const FanMorphism& phi) {
    const Mat& M = phi.matrix;
    std::size_t m = phi.codomain.rank;
    Mat H = hermite_form(M, m).H;
    for (std::size_t i = 0; i < m; ++i) {
        if (i >= H.size()) return false;
        for (std::size_t j = 0; j < m; ++j)
            if (H[i][j] != (i == j ? 1 : 0)) return false;
    }
    auto dom = phi.domain.all_cones();
    std::map<RaySet, std::vector<RaySet>> pre;
    for (const auto& c : dom) {
        std::vector<Vec> imgs;
        for (const auto& r : phi.domain.cone_rays(c)) imgs.push_back(mul(r, M));
        RaySet t;
        if (!smallest_cone(phi.codomain, imgs, t)) return false;
        pre[t].push_back(c);
    }
    for (const auto& target : phi.codomain.all_cones()) {
        auto it = pre.find(target);
        if (it == pre.end()) continue;
        std::size_t dt = rank_of(phi.codomain.cone_rays(target));
        for (const auto& c : it->second) {
            bool minimal = std::none_of(it->second.begin(), it->second.end(), [&](const RaySet& d) {
                return d != c && std::includes(c.begin(), c.end(), d.begin(), d.end());
            });
            if (!minimal) continue;
            std::vector<Vec> imgs;
            for (const auto& r : phi.domain.cone_rays(c)) imgs.push_back(mul(r, M));
            if (rank_of(phi.domain.cone_rays(c)) != dt || rank_of(imgs) != dt) return false;
        }
    }
    return true;
}

KernelFan kernel_fan(const FanMorphism& phi) {
    KernelFan kf;
    std::size_t n = phi.domain.rank;
    kf.lattice.ambient_rank = n;
    kf.lattice.basis = kernel_basis(phi.matrix, phi.codomain.rank);
    std::vector<RaySet> zero;
    for (const auto& c : phi.domain.all_cones()) {
        if (c.empty()) continue;
        bool z = true;
        for (const auto& r : phi.domain.cone_rays(c))
            if (!is_zero(mul(r, phi.matrix))) { z = false; break; }
        if (z) zero.push_back(c);
    }
    std::set<int> used;
    for (const auto& c : zero) used.insert(c.begin(), c.end());
    std::vector<int> order(used.begin(), used.end());
    std::vector<Vec> rays;
    for (int i : order) {
        kf.ambient_rays.push_back(phi.domain.rays[static_cast<std::size_t>(i)]);
        rays.push_back(kf.lattice.coordinates(phi.domain.rays[static_cast<std::size_t>(i)]));
    }
    std::vector<RaySet> cones;
    for (const auto& c : zero) {
        RaySet k;
        for (int i : c) k.push_back(static_cast<int>(std::find(order.begin(), order.end(), i) - order.begin()));
        cones.push_back(k);
    }
    kf.fan = Fan::make(kf.lattice.rank(), rays, cones);
    return kf;
}

MonomialMap homogeneous_map(const FanMorphism& phi) {
    MonomialMap mm;
    mm.images.resize(phi.codomain.rays.size());
    for (std::size_t i = 0; i < phi.domain.rays.size(); ++i) {
        Vec img = mul(phi.domain.rays[i], phi.matrix);
        if (is_zero(img)) continue;
        Int c = content(img);
        int j = phi.codomain.ray_index(primitive(img));
        if (j < 0)
            throw Error("no_monomial_form", "ray image is not on a codomain ray", to_string(phi.domain.rays[i]));
        mm.images[static_cast<std::size_t>(j)].push_back({static_cast<int>(i), c});
    }
    return mm;
}

}  // namespace toric
