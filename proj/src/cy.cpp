#include "toric/cy.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "toric/error.hpp"

namespace toric {

namespace {

using VecSet = std::set<Vec, VecLess>;

LatticePolytope sum_of(const std::vector<std::vector<Vec>>& vertex_sets, std::size_t rank) {
    VecSet acc{Vec(rank, Int(0))};
    for (const auto& vs : vertex_sets) {
        VecSet next;
        for (const auto& a : acc)
            for (const auto& b : vs) next.insert(add(a, b));
        acc = std::move(next);
    }
    return LatticePolytope::hull({acc.begin(), acc.end()});
}

std::string part_letter(std::size_t i) { return std::string(1, static_cast<char>('a' + static_cast<int>(i % 26))); }

ParamScalar param_power(const std::string& name, const Int& e) {
    ParamScalar p = ParamScalar::param(name), r(1);
    long n = e.convert_to<long>();
    for (long i = 0; i < (n < 0 ? -n : n); ++i) r = r * p;
    return n < 0 ? ParamScalar(1) / r : r;
}

std::vector<std::string> default_names(std::vector<std::string> names, std::size_t n, const char* prefix) {
    if (names.empty())
        for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
    if (names.size() != n) throw Error("dimension", "one variable name per ray is required");
    return names;
}

}  // namespace

NefPartition make_nef_partition(const LatticePolytope& delta, const std::vector<int>& assignment) {
    if (!is_reflexive(delta)) throw Error("not_reflexive", "nef-partitions need a reflexive polytope");
    NefPartition np;
    np.delta = delta;
    np.delta_polar = polar(delta);
    const auto& V = np.delta_polar.vertices();
    if (assignment.size() != V.size()) throw Error("dimension", "one part per vertex of the polar is required");
    int r = assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
    np.parts.assign(static_cast<std::size_t>(r), {});
    for (std::size_t j = 0; j < V.size(); ++j) {
        if (assignment[j] < 0) throw Error("invalid_partition", "negative part index");
        np.parts[static_cast<std::size_t>(assignment[j])].push_back(static_cast<int>(j));
    }
    std::size_t n = delta.rank();
    Vec zero(n, Int(0));
    std::vector<std::vector<Vec>> nabla_vertices, delta_vertices;
    for (std::size_t i = 0; i < np.parts.size(); ++i) {
        if (np.parts[i].empty()) throw Error("invalid_partition", "empty part", std::to_string(i));
        std::vector<Vec> pts{zero};
        for (int j : np.parts[i]) pts.push_back(V[static_cast<std::size_t>(j)]);
        np.nabla_i.push_back(hull_in_span(pts, n));
        nabla_vertices.push_back(np.nabla_i.back().ambient_vertices());

        std::vector<Vec> di;
        for (const auto& u : delta.points()) {
            bool ok = true;
            for (std::size_t j = 0; j < V.size() && ok; ++j)
                ok = dot(u, V[j]) >= (assignment[j] == static_cast<int>(i) ? -1 : 0);
            if (ok) di.push_back(u);
        }
        np.delta_i.push_back(hull_in_span(di, n));
        delta_vertices.push_back(np.delta_i.back().ambient_vertices());
    }
    np.nabla = sum_of(nabla_vertices, n);
    if (!is_reflexive(np.nabla)) throw Error("not_nef_partition", "not a nef-partition: nabla is not reflexive");
    if (!(sum_of(delta_vertices, n) == delta))
        throw Error("not_nef_partition", "not a nef-partition: the pieces do not sum to delta");
    return np;
}

NefPartition make_nef_partition(const LatticePolytope& delta, const std::vector<std::vector<Vec>>& parts) {
    if (!is_reflexive(delta)) throw Error("not_reflexive", "nef-partitions need a reflexive polytope");
    LatticePolytope p = polar(delta);
    std::vector<int> assignment(p.vertices().size(), -1);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (const auto& v : parts[i]) {
            auto it = std::find(p.vertices().begin(), p.vertices().end(), v);
            if (it == p.vertices().end()) throw Error("invalid_partition", "not a vertex of the polar", to_string(v));
            auto& slot = assignment[static_cast<std::size_t>(it - p.vertices().begin())];
            if (slot != -1) throw Error("invalid_partition", "vertex listed twice", to_string(v));
            slot = static_cast<int>(i);
        }
    for (std::size_t j = 0; j < assignment.size(); ++j)
        if (assignment[j] < 0) throw Error("invalid_partition", "vertex not assigned", to_string(p.vertices()[j]));
    return make_nef_partition(delta, assignment);
}

NefPartition dual_nef_partition(const NefPartition& np) {
    LatticePolytope p = polar(np.nabla);
    std::vector<int> assignment;
    for (const auto& w : p.vertices()) {
        int found = -1;
        for (std::size_t i = 0; i < np.delta_i.size(); ++i) {
            auto vs = np.delta_i[i].ambient_vertices();
            if (std::find(vs.begin(), vs.end(), w) != vs.end()) {
                found = static_cast<int>(i);
                break;
            }
        }
        if (found < 0) throw Error("internal", "vertex of the dual polytope lies in no piece", to_string(w));
        assignment.push_back(found);
    }
    return make_nef_partition(np.nabla, assignment);
}

std::vector<Vec> selected_points(const SubPolytope& piece, MonomialSelection sel) {
    std::vector<Vec> pts;
    if (sel == MonomialSelection::Simplified) {
        for (const auto& u : piece.poly.points()) {
            int tight = 0;
            for (const auto& f : piece.poly.facets()) tight += dot(u, f.normal) == -f.offset ? 1 : 0;
            if (tight != 1) pts.push_back(piece.lattice.ambient(u));
        }
    } else {
        pts = sel == MonomialSelection::All ? piece.ambient_points() : piece.ambient_vertices();
    }
    if (sel == MonomialSelection::VerticesOrigin) {
        Vec zero(pts.empty() ? 0 : pts.front().size(), Int(0));
        if (std::find(pts.begin(), pts.end(), zero) == pts.end()) pts.push_back(zero);
    }
    std::sort(pts.begin(), pts.end(), VecLess());
    return pts;
}

SparsePoly anticanonical_polynomial(const LatticePolytope& delta, const std::vector<Vec>& rays, MonomialSelection sel,
                                    const CoefficientMap& coefficients, std::vector<std::string> var_names) {
    var_names = default_names(std::move(var_names), rays.size(), "z");
    std::vector<Vec> pts = selected_points(hull_in_span(delta.vertices(), delta.rank()), sel);
    SparsePoly out(var_names);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        Exps e;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            Int x = dot(pts[k], rays[r]) + 1;
            if (x < 0) throw Error("negative_exponent", "ray is not crepant for this polytope", to_string(rays[r]));
            e.push_back(x.convert_to<int>());
        }
        auto it = coefficients.find(pts[k]);
        out.add_term(e, it != coefficients.end() ? it->second : ParamScalar::param("a" + std::to_string(k)));
    }
    return out;
}

std::vector<SparsePoly> nef_ci_polynomials(const NefPartition& np, const std::vector<Vec>& rays, MonomialSelection sel,
                                           const std::vector<CoefficientMap>& coefficients,
                                           std::vector<std::string> var_names) {
    var_names = default_names(std::move(var_names), rays.size(), "y");
    std::size_t r = np.delta_i.size();
    std::vector<std::vector<Int>> shift(r, std::vector<Int>(rays.size()));
    for (std::size_t j = 0; j < rays.size(); ++j) {
        Int total = 0;
        for (std::size_t i = 0; i < r; ++i) {
            Int lo = 0;
            for (const auto& m : np.delta_i[i].ambient_vertices()) lo = std::min(lo, dot(m, rays[j]));
            shift[i][j] = -lo;
            total += -lo;
        }
        if (total != 1) throw Error("not_crepant", "ray is not crepant for this polytope", to_string(rays[j]));
    }
    std::vector<SparsePoly> out;
    for (std::size_t i = 0; i < r; ++i) {
        SparsePoly g(var_names);
        std::vector<Vec> pts = selected_points(np.delta_i[i], sel);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            Exps e;
            for (std::size_t j = 0; j < rays.size(); ++j) e.push_back((dot(pts[k], rays[j]) + shift[i][j]).convert_to<int>());
            ParamScalar c = ParamScalar::param(part_letter(i) + std::to_string(k));
            if (i < coefficients.size()) {
                auto it = coefficients[i].find(pts[k]);
                if (it != coefficients[i].end()) c = it->second;
            }
            g.add_term(e, c);
        }
        out.push_back(std::move(g));
    }
    return out;
}

HodgePair batyrev_hodge(const LatticePolytope& delta) {
    if (delta.rank() != 4) throw Error("dimension", "Hodge number formula needs a four-dimensional polytope");
    if (!is_reflexive(delta)) throw Error("not_reflexive", "Hodge number formula needs a reflexive polytope");
    auto side = [](const LatticePolytope& p) {
        Int h = Int(p.points().size()) - 5;
        for (const auto& f : p.faces(3)) h -= Int(f.lstar);
        for (const auto& f : p.faces(2)) h += Int(f.lstar) * Int(dual_face(p, f).lstar);
        return h;
    };
    return {side(polar(delta)), side(delta)};
}

GkzDegrees gkz_degrees(const Fan& mirror_fan, const std::vector<std::vector<int>>& parts, std::vector<std::string> names) {
    std::vector<bool> used(mirror_fan.rays.size(), false);
    for (const auto& p : parts)
        for (int r : p) {
            if (r < 0 || static_cast<std::size_t>(r) >= used.size() || used[static_cast<std::size_t>(r)])
                throw Error("invalid_partition", "parts must partition the rays");
            used[static_cast<std::size_t>(r)] = true;
        }
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw Error("invalid_partition", "parts must partition the rays");
    std::vector<Vec> gens = mori_cone(mirror_fan);
    std::size_t n = mirror_fan.rank;
    GkzDegrees d;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t k = 0; k <= parts[i].size(); ++k) {
            bool origin = k == parts[i].size();
            Vec col;
            for (const auto& g : gens) {
                if (!origin) {
                    col.push_back(g[static_cast<std::size_t>(parts[i][k])]);
                } else {
                    Int s = 0;
                    for (int r : parts[i]) s += g[static_cast<std::size_t>(r)];
                    col.push_back(-s);
                }
            }
            d.columns.push_back(col);
            d.points.push_back(origin ? Vec(n, Int(0)) : mirror_fan.rays[static_cast<std::size_t>(parts[i][k])]);
            d.part.push_back(static_cast<int>(i));
            d.origin_flags.push_back(origin);
            if (names.size() < d.columns.size()) names.push_back(part_letter(i) + std::to_string(k));
        }
    }
    if (names.size() != d.columns.size()) throw Error("dimension", "one name per coefficient is required");
    d.names = std::move(names);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        ParamScalar b(1);
        for (std::size_t j = 0; j < d.columns.size(); ++j)
            if (d.columns[j][g] != 0) b = b * param_power(d.names[j], d.columns[j][g]);
        d.moduli_monomials.push_back(b);
    }
    return d;
}

GkzDegrees gkz_degrees(const NefPartition& np, const std::function<std::string(int, const Vec&)>& namer) {
    Fan f = face_fan(polar(np.nabla));
    std::vector<std::vector<int>> parts(np.delta_i.size());
    for (std::size_t r = 0; r < f.rays.size(); ++r) {
        bool placed = false;
        for (std::size_t i = 0; i < np.delta_i.size() && !placed; ++i) {
            auto vs = np.delta_i[i].ambient_vertices();
            if (std::find(vs.begin(), vs.end(), f.rays[r]) != vs.end()) {
                parts[i].push_back(static_cast<int>(r));
                placed = true;
            }
        }
        if (!placed) throw Error("internal", "mirror ray lies in no piece", to_string(f.rays[r]));
    }
    std::vector<std::string> names;
    if (namer) {
        Vec zero(f.rank, Int(0));
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (int r : parts[i]) names.push_back(namer(static_cast<int>(i), f.rays[static_cast<std::size_t>(r)]));
            names.push_back(namer(static_cast<int>(i), zero));
        }
    }
    return gkz_degrees(f, parts, names);
}

Int factorial(int n) {
    static std::mutex mu;
    static std::vector<Int> memo{Int(1)};
    if (n < 0) throw Error("domain", "factorial of a negative number");
    std::lock_guard<std::mutex> lock(mu);
    while (memo.size() <= static_cast<std::size_t>(n)) memo.push_back(memo.back() * Int(memo.size()));
    return memo[static_cast<std::size_t>(n)];
}

Int gkz_coefficient(const GkzDegrees& deg, const std::vector<Int>& k) {
    if (k.size() != deg.moduli()) throw Error("dimension", "one index per modulus is required");
    Int num = 1, den = 1;
    for (std::size_t j = 0; j < deg.columns.size(); ++j) {
        Int s = 0;
        for (std::size_t g = 0; g < k.size(); ++g) s += deg.columns[j][g] * k[g];
        if (deg.origin_flags[j]) s = -s;
        if (s < 0) return 0;
        if (s > 1 << 20) throw Error("overflow", "factorial argument too large");
        (deg.origin_flags[j] ? num : den) *= factorial(s.convert_to<int>());
    }
    if (num % den != 0) throw Error("non_integral", "GKZ coefficient is not an integer");
    return num / den;
}

GkzSeries gkz_series_reindexed(const GkzDegrees& deg, int max_total) {
    if (deg.moduli() != 2) throw Error("shape", "reindexing needs exactly two moduli");
    GkzSeries s;
    bool found = false;
    for (std::size_t j = 0; j < deg.columns.size(); ++j) {
        if (deg.origin_flags[j]) continue;
        const Vec& c = deg.columns[j];
        if (c[0] >= 0 && c[1] >= 0) continue;
        if (c[0] <= 0 && c[1] <= 0) throw Error("shape", "a coefficient has nonpositive degree in every modulus");
        int sh = c[0] > 0 ? 0 : 1;
        if (c[static_cast<std::size_t>(sh)] != 1) throw Error("shape", "support constraint is not of the form n - s*m");
        GkzSeries t;
        t.shifted = sh;
        t.free = 1 - sh;
        t.shift = -c[static_cast<std::size_t>(t.free)];
        if (found && (t.shifted != s.shifted || t.shift != s.shift)) throw Error("shape", "more than one support constraint");
        s = t;
        found = true;
    }
    if (!found) throw Error("shape", "no support constraint to reindex");
    for (int m = 0; m <= max_total; ++m)
        for (int n = 0; m + n <= max_total; ++n) {
            std::vector<Int> k(2);
            k[static_cast<std::size_t>(s.free)] = m;
            k[static_cast<std::size_t>(s.shifted)] = Int(n) + s.shift * m;
            s.table[{m, n}] = gkz_coefficient(deg, k);
        }
    return s;
}

}  // namespace toric
