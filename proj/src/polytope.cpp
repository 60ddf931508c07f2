#include "toric/polytope.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "toric/dd.hpp"

namespace toric {

struct LatticePolytope::Cache {
    std::once_flag points_once, faces_once;
    std::vector<Vec> points, interior, boundary;
    std::vector<std::vector<int>> point_tight;  // tight facets per point
    std::vector<std::vector<Face>> faces;
};

namespace {

using i128 = __int128;

template <class T>
T floor_div(T a, T b) {
    T q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

template <class T>
T ceil_div(T a, T b) { return -floor_div<T>(-a, b); }

template <class T>
T from_int(const Int& x);

template <>
i128 from_int<i128>(const Int& x) { return static_cast<i128>(static_cast<long long>(x)); }

template <>
Int from_int<Int>(const Int& x) { return x; }

template <class T>
Int to_int(const T& x);

template <>
Int to_int<i128>(const i128& x) { return Int(static_cast<long long>(x)); }

template <>
Int to_int<Int>(const Int& x) { return x; }

template <class T>
struct Enumerator {
    std::size_t d;
    std::vector<std::vector<std::pair<std::vector<T>, T>>> levels;  // per level: (normal prefix, offset)
    std::vector<T> x;
    std::vector<Vec>* out;

    void run(std::size_t k) {
        if (k == d) {
            Vec v(d);
            for (std::size_t i = 0; i < d; ++i) v[i] = to_int<T>(x[i]);
            out->push_back(std::move(v));
            return;
        }
        bool has_lo = false, has_hi = false;
        T lo = 0, hi = 0;
        for (const auto& [n, c] : levels[k]) {
            T rhs = -c;
            for (std::size_t j = 0; j < k; ++j) rhs -= n[j] * x[j];
            T nk = n[k];
            if (nk > 0) {
                T b = ceil_div<T>(rhs, nk);
                if (!has_lo || b > lo) lo = b;
                has_lo = true;
            } else if (nk < 0) {
                T b = floor_div<T>(rhs, nk);
                if (!has_hi || b < hi) hi = b;
                has_hi = true;
            } else if (rhs > 0) {
                return;
            }
        }
        if (!has_lo || !has_hi) throw Error("unbounded", "lattice point enumeration on an unbounded region");
        for (T t = lo; t <= hi; t += 1) {
            x[k] = t;
            run(k + 1);
        }
    }
};

std::vector<int> tight_of(const std::vector<Facet>& facets, const Vec& u) {
    std::vector<int> t;
    for (std::size_t i = 0; i < facets.size(); ++i)
        if (dot(u, facets[i].normal) == -facets[i].offset) t.push_back(static_cast<int>(i));
    return t;
}

std::size_t affine_rank(const std::vector<Vec>& pts) {
    if (pts.size() <= 1) return 0;
    Mat diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    return rank(diffs);
}

}  // namespace

LatticePolytope LatticePolytope::hull(const std::vector<Vec>& points_in) {
    if (points_in.empty()) throw Error("empty", "hull of an empty point set");
    std::set<Vec, VecLess> uniq(points_in.begin(), points_in.end());
    std::vector<Vec> pts(uniq.begin(), uniq.end());
    std::size_t d = pts.front().size();
    for (const auto& p : pts)
        if (p.size() != d) throw Error("dimension", "points of different rank");
    if (affine_rank(pts) < d) {
        Mat diffs;
        for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
        Sublattice span = saturation(diffs, d);
        throw Error("not_full_dimensional", "polytope is not full-dimensional",
                    "affine span: " + to_string(pts[0]) + " + span" + to_string(span.basis));
    }
    Mat rows;
    for (const auto& p : pts) {
        Vec r = p;
        r.emplace_back(1);
        rows.push_back(std::move(r));
    }
    LatticePolytope P;
    P.rank_ = d;
    for (const auto& a : extreme_rays(rows, d + 1)) {
        Vec n(a.begin(), a.begin() + static_cast<long>(d));
        Int g = content(n);
        if (g == 0) continue;
        for (auto& x : n) x /= g;
        P.facets_.push_back({n, a[d] / g});
    }
    std::sort(P.facets_.begin(), P.facets_.end(),
              [](const Facet& a, const Facet& b) { return VecLess()(a.normal, b.normal); });
    for (const auto& p : pts) {
        auto t = tight_of(P.facets_, p);
        if (t.size() < d) continue;
        Mat normals;
        for (int i : t) normals.push_back(P.facets_[static_cast<std::size_t>(i)].normal);
        if (toric::rank(normals) == d) P.vertices_.push_back(p);
    }
    P.cache_ = std::make_shared<Cache>();
    return P;
}

bool LatticePolytope::contains(const Vec& u) const {
    for (const auto& f : facets_)
        if (dot(u, f.normal) < -f.offset) return false;
    return true;
}

bool LatticePolytope::origin_interior() const {
    return std::all_of(facets_.begin(), facets_.end(), [](const Facet& f) { return f.offset > 0; });
}

std::vector<int> LatticePolytope::tight_facets(const Vec& u) const { return tight_of(facets_, u); }

const LatticePolytope::Cache& LatticePolytope::cache() const {
    if (!cache_) throw Error("empty", "uninitialized polytope");
    return *cache_;
}

void LatticePolytope::compute_points(Cache& c) const {
    std::size_t d = rank_;
    std::vector<std::vector<Facet>> proj(d + 1);
    proj[d] = facets_;
    for (std::size_t k = 1; k < d; ++k) {
        std::vector<Vec> pk;
        for (const auto& v : vertices_) pk.emplace_back(v.begin(), v.begin() + static_cast<long>(k));
        proj[k] = hull(pk).facets();
    }
    Int bound = 0;
    for (const auto& v : vertices_)
        for (const auto& x : v) bound = std::max(bound, Int(abs(x)));
    for (std::size_t k = 1; k <= d; ++k)
        for (const auto& f : proj[k]) {
            bound = std::max(bound, Int(abs(f.offset)));
            for (const auto& x : f.normal) bound = std::max(bound, Int(abs(x)));
        }
    auto fill = [&](auto tag) {
        using T = decltype(tag);
        Enumerator<T> e;
        e.d = d;
        e.levels.resize(d);
        for (std::size_t k = 1; k <= d; ++k)
            for (const auto& f : proj[k]) {
                std::vector<T> n;
                for (const auto& x : f.normal) n.push_back(from_int<T>(x));
                e.levels[k - 1].emplace_back(std::move(n), from_int<T>(f.offset));
            }
        e.x.assign(d, T(0));
        e.out = &c.points;
        e.run(0);
    };
    if (bound < (Int(1) << 40) && d <= 8) fill(i128(0));
    else fill(Int(0));
    for (const auto& p : c.points) {
        auto t = tight_of(facets_, p);
        (t.empty() ? c.interior : c.boundary).push_back(p);
        c.point_tight.push_back(std::move(t));
    }
}

void LatticePolytope::compute_faces(Cache& c) const {
    std::call_once(c.points_once, [&] { compute_points(c); });
    std::size_t d = rank_;
    std::vector<std::vector<int>> facet_verts(facets_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (int f : tight_of(facets_, vertices_[i])) facet_verts[static_cast<std::size_t>(f)].push_back(static_cast<int>(i));
    std::set<std::vector<int>> seen(facet_verts.begin(), facet_verts.end());
    std::vector<std::vector<int>> queue(seen.begin(), seen.end());
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (const auto& fv : facet_verts) {
            std::vector<int> inter;
            std::set_intersection(queue[qi].begin(), queue[qi].end(), fv.begin(), fv.end(), std::back_inserter(inter));
            if (inter.empty() || seen.count(inter)) continue;
            seen.insert(inter);
            queue.push_back(inter);
        }
    }
    c.faces.assign(d, {});
    for (const auto& vs : seen) {
        Face F;
        F.vertices = vs;
        std::vector<Vec> pts;
        for (int i : vs) pts.push_back(vertices_[static_cast<std::size_t>(i)]);
        F.dim = static_cast<int>(affine_rank(pts));
        for (std::size_t f = 0; f < facet_verts.size(); ++f)
            if (std::includes(facet_verts[f].begin(), facet_verts[f].end(), vs.begin(), vs.end()))
                F.facets.push_back(static_cast<int>(f));
        for (const auto& t : c.point_tight) {
            if (std::includes(t.begin(), t.end(), F.facets.begin(), F.facets.end())) {
                ++F.l;
                if (t == F.facets) ++F.lstar;
            }
        }
        c.faces[static_cast<std::size_t>(F.dim)].push_back(std::move(F));
    }
    for (auto& list : c.faces)
        std::sort(list.begin(), list.end(), [](const Face& a, const Face& b) { return a.vertices < b.vertices; });
}

const std::vector<Vec>& LatticePolytope::points() const {
    auto& c = const_cast<Cache&>(cache());
    std::call_once(c.points_once, [&] { compute_points(c); });
    return c.points;
}

const std::vector<Vec>& LatticePolytope::interior_points() const {
    points();
    return cache().interior;
}

const std::vector<Vec>& LatticePolytope::boundary_points() const {
    points();
    return cache().boundary;
}

const std::vector<Face>& LatticePolytope::faces(int d) const {
    if (d < 0 || static_cast<std::size_t>(d) >= rank_) throw Error("dimension", "face dimension out of range");
    auto& c = const_cast<Cache&>(cache());
    std::call_once(c.faces_once, [&] { compute_faces(c); });
    return c.faces[static_cast<std::size_t>(d)];
}

std::vector<Vec> SubPolytope::ambient_vertices() const {
    std::vector<Vec> out;
    for (const auto& v : poly.vertices()) out.push_back(lattice.ambient(v));
    return out;
}

std::vector<Vec> SubPolytope::ambient_points() const {
    std::vector<Vec> out;
    for (const auto& v : poly.points()) out.push_back(lattice.ambient(v));
    std::sort(out.begin(), out.end(), VecLess());
    return out;
}

std::vector<RatVec> polar_vertices(const LatticePolytope& p) {
    if (!p.origin_interior()) throw Error("polar_undefined", "polar undefined: origin is not interior");
    std::vector<RatVec> out;
    for (const auto& f : p.facets()) {
        RatVec v;
        for (const auto& x : f.normal) v.push_back(Rat(x, f.offset));
        out.push_back(std::move(v));
    }
    return out;
}

LatticePolytope polar(const LatticePolytope& p) {
    if (!p.origin_interior()) throw Error("polar_undefined", "polar undefined: origin is not interior");
    std::vector<Vec> verts;
    std::string frac;
    for (const auto& f : p.facets()) {
        if (f.offset != 1) {
            RatVec v;
            for (const auto& x : f.normal) v.push_back(Rat(x, f.offset));
            frac += "(";
            for (std::size_t i = 0; i < v.size(); ++i) frac += (i ? "," : "") + v[i].str();
            frac += ")";
            continue;
        }
        verts.push_back(f.normal);
    }
    if (!frac.empty()) throw Error("not_reflexive", "not reflexive: polar has fractional vertices", frac);
    return LatticePolytope::hull(verts);
}

bool is_reflexive(const LatticePolytope& p) {
    if (!p.origin_interior()) return false;
    return std::all_of(p.facets().begin(), p.facets().end(), [](const Facet& f) { return f.offset == 1; });
}

std::pair<std::vector<Vec>, std::vector<Vec>> lattice_points(const LatticePolytope& p) {
    return {p.interior_points(), p.boundary_points()};
}

const std::vector<Face>& faces(const LatticePolytope& p, int d) { return p.faces(d); }

Face dual_face(const LatticePolytope& p, const Face& f) {
    if (!is_reflexive(p)) throw Error("not_reflexive", "dual face requires a reflexive polytope");
    LatticePolytope q = polar(p);
    int dd = static_cast<int>(p.rank()) - 1 - f.dim;
    for (const auto& g : q.faces(dd))
        if (g.vertices == f.facets) return g;
    throw Error("internal", "dual face not found");
}

SkeletonGraph skeleton(const LatticePolytope& p) {
    SkeletonGraph G;
    G.nodes = p.boundary_points();
    std::map<Vec, int, VecLess> index;
    for (std::size_t i = 0; i < G.nodes.size(); ++i) index[G.nodes[i]] = static_cast<int>(i);
    std::set<std::pair<int, int>> edges;
    for (const auto& e : p.faces(1)) {
        const Vec& a = p.vertices()[static_cast<std::size_t>(e.vertices[0])];
        const Vec& b = p.vertices()[static_cast<std::size_t>(e.vertices[1])];
        Vec d = sub(b, a);
        Int g = content(d);
        Vec step = primitive(d);
        Vec cur = a;
        for (Int t = 0; t < g; ++t) {
            Vec nxt = add(cur, step);
            int i = index.at(cur), j = index.at(nxt);
            edges.insert({std::min(i, j), std::max(i, j)});
            cur = nxt;
        }
    }
    G.edges.assign(edges.begin(), edges.end());
    return G;
}

LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b) {
    std::vector<Vec> pts;
    for (const auto& u : a.vertices())
        for (const auto& v : b.vertices()) pts.push_back(add(u, v));
    return LatticePolytope::hull(pts);
}

SubPolytope hull_in_span(const std::vector<Vec>& points, std::size_t ambient_rank) {
    SubPolytope S;
    S.lattice = saturation(points, ambient_rank);
    std::vector<Vec> coords;
    for (const auto& p : points) coords.push_back(S.lattice.coordinates(p));
    S.poly = LatticePolytope::hull(coords);
    return S;
}

std::vector<Vec> filter_points(const std::vector<Vec>& points, const std::vector<Facet>& ineqs) {
    std::vector<Vec> out;
    for (const auto& p : points) {
        bool ok = true;
        for (const auto& f : ineqs)
            if (dot(p, f.normal) < -f.offset) { ok = false; break; }
        if (ok) out.push_back(p);
    }
    return out;
}

}  // namespace toric
