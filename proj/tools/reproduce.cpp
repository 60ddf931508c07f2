#include "reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "toric/cy.hpp"
#include "toric/error.hpp"
#include "toric/k3.hpp"
#include "toric/monodromy.hpp"
#include "toric/poly.hpp"

namespace toric::repro {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

Vec vec_from(const json& j) {
    Vec v;
    for (const auto& x : j) v.push_back(x.is_string() ? Int(x.get<std::string>()) : Int(x.get<long long>()));
    return v;
}

std::vector<Vec> vectors_from(const json& j) {
    std::vector<Vec> out;
    for (const auto& x : j) out.push_back(vec_from(x));
    return out;
}

Mat matrix_from(const json& j) { return vectors_from(j); }

json to_json(const Vec& v) {
    json out = json::array();
    for (const auto& x : v) {
        if (abs(x) < Int("9000000000000000000")) out.push_back(x.convert_to<long long>());
        else out.push_back(x.str());
    }
    return out;
}

json to_json(const std::vector<Vec>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(to_json(v));
    return out;
}

LatticePolytope polytope_from(const json& j) { return LatticePolytope::hull(vectors_from(j.at("vertices"))); }

Fan fan_from(const json& j) {
    Fan f;
    if (j.contains("rays")) {
        std::vector<RaySet> cones;
        for (const auto& c : j.at("cones")) cones.push_back(c.get<std::vector<int>>());
        f = Fan::make(j.at("rank").get<std::size_t>(), vectors_from(j.at("rays")), cones);
    } else if (j.contains("face_fan")) {
        f = face_fan(LatticePolytope::hull(vectors_from(j.at("face_fan"))));
    } else if (j.contains("normal_fan")) {
        f = normal_fan(LatticePolytope::hull(vectors_from(j.at("normal_fan"))));
    } else {
        throw Error("schema", "fan needs rays and cones, face_fan or normal_fan");
    }
    if (j.contains("star_subdivide"))
        for (const auto& r : j.at("star_subdivide")) f = star_subdivide(f, vec_from(r));
    return f;
}

json fan_to_json(const Fan& f) {
    json cones = json::array();
    for (const auto& c : f.cones) cones.push_back(c);
    return {{"rank", f.rank}, {"rays", to_json(f.rays)}, {"cones", cones}};
}

std::string bracket_notation(const FanMorphism& phi, const std::function<std::string(int)>& domain_name) {
    MonomialMap mm = homogeneous_map(phi);
    std::string out = "[";
    for (std::size_t j = 0; j < mm.images.size(); ++j) {
        if (j) out += " : ";
        auto img = mm.images[j];
        std::sort(img.begin(), img.end());
        if (img.empty()) out += "1";
        for (std::size_t k = 0; k < img.size(); ++k) {
            if (k) out += "*";
            out += domain_name(img[k].first);
            if (img[k].second != 1) out += "^" + img[k].second.str();
        }
    }
    return out + "]";
}

Fixtures::Fixtures(std::string dir) : dir_(std::move(dir)) {}

const json& Fixtures::file(const std::string& name) const {
    auto it = cache_.find(name);
    if (it == cache_.end()) it = cache_.emplace(name, read_json(dir_ + "/" + name)).first;
    return it->second;
}

std::vector<Vec> Fixtures::vertices(const std::string& name) const { return vectors_from(file(name).at("vertices")); }
Fan Fixtures::fan(const std::string& name) const { return fan_from(file(name)); }
Mat Fixtures::morphism(const std::string& key) const { return matrix_from(file("morphisms.json").at(key)); }
Vec Fixtures::y(const std::string& name) const { return vec_from(file("points.json").at("y").at(name)); }
Vec Fixtures::z(const std::string& name) const { return vec_from(file("points.json").at("z").at(name)); }

std::string point_name(const json& points, const Vec& v) {
    for (const auto& [side, named] : points.items())
        for (const auto& [k, p] : named.items())
            if (p.size() == v.size() && vec_from(p) == v) return side + k;
    return {};
}

std::string Fixtures::name_of(const Vec& v) const { return point_name(file("points.json"), v); }

namespace {

using Clock = std::chrono::steady_clock;
using VecSet = std::set<Vec, VecLess>;

VecSet as_set(const std::vector<Vec>& v) { return {v.begin(), v.end()}; }

class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    std::vector<std::string> failures;
};

// Objects shared by several criteria, built on first use.
class Session {
public:
    explicit Session(const Fixtures& f) : fx(f) {}

    const Fixtures& fx;

    const Fan& base2() {
        if (!base2_) base2_ = fx.fan("b2.json");
        return *base2_;
    }
    const Fan& sigma5() {
        if (!sigma5_)
            sigma5_ = subdivide_domain(fx.morphism("alpha"), face_fan(LatticePolytope::hull(fx.vertices("delta5_polar.json"))),
                                       base2());
        return *sigma5_;
    }
    const Fan& x4() {
        if (!x4_) x4_ = fx.fan("x4.json");
        return *x4_;
    }
    // Phi-compatible subdivision of the partial fan, before the extra star subdivision.
    const Fan& phi_subdivided() {
        if (!phi_sub_) {
            const json& r = fx.golden().at("fibration").at("phi_domain");
            const Fan& s5 = sigma5();
            std::vector<int> drop;
            for (const auto& n : r.at("drop_rays")) drop.push_back(s5.ray_index(fx.y(n)));
            std::vector<std::pair<int, int>> pairs;
            for (const auto& p : r.at("drop_pairs")) pairs.push_back({s5.ray_index(fx.y(p[0])), s5.ray_index(fx.y(p[1]))});
            std::vector<RaySet> keep;
            for (const auto& c : s5.all_cones()) {
                auto in = [&](int i) { return std::find(c.begin(), c.end(), i) != c.end(); };
                bool out = c.empty() || std::any_of(drop.begin(), drop.end(), in) ||
                           std::any_of(pairs.begin(), pairs.end(), [&](auto p) { return in(p.first) && in(p.second); });
                if (!out) keep.push_back(c);
            }
            phi_sub_ = subdivide_domain(fx.morphism("phi"), Fan::make(s5.rank, s5.rays, keep), x4());
        }
        return *phi_sub_;
    }
    const FanMorphism& phi() {
        if (!phi_) {
            Fan d = phi_subdivided();
            for (const auto& n : fx.golden().at("fibration").at("phi_domain").at("star_subdivide")) d = star_subdivide(d, fx.y(n));
            phi_ = check_compatibility(fx.morphism("phi"), d, x4());
        }
        return *phi_;
    }
    const NefPartition& nef() {
        if (!nef_) {
            const json& j = fx.file("nef_partition.json");
            auto verts = vectors_from(j.at("polar_vertices"));
            std::vector<std::vector<Vec>> parts;
            for (const auto& p : j.at("parts")) {
                parts.emplace_back();
                for (const auto& i : p) parts.back().push_back(verts.at(i.get<std::size_t>()));
            }
            nef_ = make_nef_partition(polar(LatticePolytope::hull(verts)), parts);
        }
        return *nef_;
    }

private:
    std::optional<Fan> base2_, sigma5_, x4_, phi_sub_;
    std::optional<FanMorphism> phi_;
    std::optional<NefPartition> nef_;
};

std::string str(const Vec& v) { return to_string(v); }

std::vector<std::string> names_of(const Fixtures& fx, const std::vector<Vec>& rays) {
    std::vector<std::string> out;
    for (const auto& r : rays) {
        std::string n = fx.name_of(r);
        if (n.empty()) throw Error("unnamed_point", "no fixture name for point", str(r));
        out.push_back(n);
    }
    return out;
}

std::vector<Vec> named_points(const Fixtures& fx, const json& names, char side) {
    std::vector<Vec> out;
    for (const auto& n : names) out.push_back(side == 'y' ? fx.y(n) : fx.z(n));
    return out;
}

std::vector<std::string> prefixed(const json& names, const std::string& p) {
    std::vector<std::string> out;
    for (const auto& n : names) out.push_back(p + n.get<std::string>());
    return out;
}

std::set<std::pair<Vec, Int>> image_of(const MonomialMap& mm, const FanMorphism& phi, int codomain_ray) {
    std::set<std::pair<Vec, Int>> out;
    for (auto [r, e] : mm.images.at(static_cast<std::size_t>(codomain_ray))) out.insert({phi.domain.rays[static_cast<std::size_t>(r)], e});
    return out;
}

// Exponents of section m of part i on each ray: <m, v> minus its minimum over the part.
Exps part_exponents(const NefPartition& np, std::size_t part, const Vec& m, const std::vector<Vec>& rays) {
    Exps e;
    auto verts = np.delta_i[part].ambient_vertices();
    for (const auto& v : rays) {
        Int lo = dot(verts.front(), v);
        for (const auto& w : verts) lo = std::min(lo, dot(w, v));
        e.push_back(static_cast<int>((dot(m, v) - lo).convert_to<long>()));
    }
    return e;
}

// Name of the golden monomial with exponent vector e in the given ring, empty if none.
std::string monomial_name(const json& names, const Exps& e, const std::vector<std::string>& vars) {
    for (const auto& [name, mono] : names.items())
        if (parse_poly(mono.get<std::string>(), vars).monomials().front() == e) return name;
    return {};
}

std::vector<std::string> ten_vars() {
    std::vector<std::string> v;
    for (int i = 0; i < 10; ++i) v.push_back("y" + std::to_string(i));
    return v;
}

std::vector<Vec> ten_rays(const Fixtures& fx) { return fx.vertices("delta5_polar.json"); }

// Coefficients of every selected point of each part, valued by name through `value`.
std::vector<CoefficientMap> named_coefficients(Session& s, MonomialSelection sel,
                                               const std::function<ParamScalar(const std::string&)>& value, Check& c) {
    const NefPartition& np = s.nef();
    const json& names = s.fx.golden().at("equations").at("coefficient_names");
    std::vector<CoefficientMap> out(np.parts.size());
    for (std::size_t i = 0; i < np.parts.size(); ++i)
        for (const auto& m : selected_points(np.delta_i[i], sel)) {
            std::string n = monomial_name(names, part_exponents(np, i, m, ten_rays(s.fx)), ten_vars());
            c.expect(!n.empty(), "no coefficient name for section " + str(m));
            out[i][m] = value(n);
        }
    return out;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    for (auto p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
    return s;
}

ParamScalar random_rat(std::mt19937& rng, bool nonzero = true) {
    std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
    while (true) {
        Rat q(num(rng), den(rng));
        if (!nonzero || q != 0) return ParamScalar(q);
    }
}

// ---------------------------------------------------------------------------------------------

void reflexive(Session& s, Check& c) {
    const json& g = s.fx.golden().at("reflexive");
    for (const auto& name : g.at("polytopes")) {
        LatticePolytope p = LatticePolytope::hull(s.fx.vertices(name));
        c.expect(is_reflexive(p), name.get<std::string>() + " is not reflexive");
        c.expect(polar(polar(p)) == p, "polar is not an involution on " + name.get<std::string>());
    }
    LatticePolytope d = polar(LatticePolytope::hull(s.fx.vertices(g.at("polar_input"))));
    c.expect(as_set(d.vertices()) == as_set(s.fx.vertices(g.at("polar_expected"))), "polar vertices differ from the printed columns");
}

void fans(Session& s, Check& c) {
    const json& g = s.fx.golden().at("fans");
    Fan f = face_fan(LatticePolytope::hull(s.fx.vertices("delta5_polar.json")));
    c.expect(f.rays.size() == g["face_fan"][0] && f.cones.size() == g["face_fan"][1],
             "face fan has " + std::to_string(f.rays.size()) + " rays, " + std::to_string(f.cones.size()) + " cones");
    const Fan& a = s.sigma5();
    c.expect(a.rays.size() == g["alpha_subdivided"][0] && a.cones.size() == g["alpha_subdivided"][1],
             "subdivided fan has " + std::to_string(a.rays.size()) + " rays, " + std::to_string(a.cones.size()) + " cones");
}

void normal(Session& s, Check& c) {
    const json& g = s.fx.golden().at("normal_fan");
    Fan f = normal_fan(LatticePolytope::hull(s.fx.vertices(g.at("input"))));
    c.expect(as_set(f.rays) == as_set(vectors_from(g.at("rays"))), "normal fan rays differ");
}

void fibration(Session& s, Check& c) {
    const json& g = s.fx.golden().at("fibration");
    c.expect(is_fibration(check_compatibility(s.fx.morphism("alpha"), s.sigma5(), s.base2())), "alpha is not a fibration");
    Fan line = s.fx.fan("p1.json");
    for (const auto& name : g.at("beta_domains"))
        c.expect(is_fibration(check_compatibility(s.fx.morphism("beta"), s.fx.fan(name), line)),
                 "beta on " + name.get<std::string>() + " is not a fibration");
    c.expect(as_set(s.phi_subdivided().rays) == as_set(named_points(s.fx, g.at("phi_subdivided_rays"), 'y')),
             "phi-compatible subdivision has unexpected rays");
    const FanMorphism& phi = s.phi();
    c.expect(is_fibration(phi), "phi is not a fibration");
    KernelFan kf = kernel_fan(phi);
    c.expect(as_set(kf.ambient_rays) == as_set(vectors_from(g.at("kernel_rays"))), "kernel fan rays differ");
    c.expect(kf.lattice.basis == matrix_from(g.at("kernel_basis")), "kernel sublattice basis differs");
}

void maps(Session& s, Check& c) {
    const json& g = s.fx.golden().at("maps");
    Fan x4 = s.x4();
    FanMorphism b = check_compatibility(s.fx.morphism("beta"), x4, s.fx.fan("p1.json"));
    std::string br = bracket_notation(b, [&](int r) { return s.fx.name_of(x4.rays[static_cast<std::size_t>(r)]); });
    c.expect(br == g.at("beta").get<std::string>(), "beta map renders as " + br);

    const FanMorphism& phi = s.phi();
    MonomialMap mm = homogeneous_map(phi);
    for (const auto& [zn, ys] : g.at("phi").items()) {
        std::set<std::pair<Vec, Int>> want;
        for (const auto& [yn, e] : ys.items()) want.insert({s.fx.y(yn), Int(e.get<long>())});
        int r = phi.codomain.ray_index(s.fx.z(zn));
        c.expect(r >= 0 && image_of(mm, phi, r) == want, "phi image of z" + zn + " differs");
    }
}

void equations(Session& s, Check& c) {
    const json& g = s.fx.golden().at("equations");
    const NefPartition& np = s.nef();
    auto ten = ten_vars();
    auto rays = ten_rays(s.fx);
    auto same = [&](const SparsePoly& got, const std::string& want, const std::vector<std::string>& vars, const std::string& what) {
        std::string w = parse_poly(want, vars).to_string(), r = got.to_string();
        c.expect(r == w, what + " renders as " + r);
    };

    auto general = named_coefficients(s, MonomialSelection::All, [](const std::string& n) { return ParamScalar::param(n); }, c);
    auto gp = nef_ci_polynomials(np, rays, MonomialSelection::All, general, ten);
    c.expect(gp.size() == 2 && gp[0].terms().size() == 3 && gp[1].terms().size() == 9, "general equations have wrong term counts");
    for (std::size_t i = 0; i < gp.size() && i < 2; ++i) same(gp[i], g["general"][i], ten, "general g" + std::to_string(i));

    const json& gauge = g.at("gauge");
    auto gauged_value = [&](const std::string& n) { return gauge.contains(n) ? parse_scalar(gauge[n]) : ParamScalar(1); };
    auto gauged = named_coefficients(s, MonomialSelection::VerticesOrigin, gauged_value, c);
    auto gv = nef_ci_polynomials(np, rays, MonomialSelection::VerticesOrigin, gauged, ten);
    for (std::size_t i = 0; i < gv.size() && i < 2; ++i) same(gv[i], g["gauged"][i], ten, "gauged g" + std::to_string(i));

    auto pvars = prefixed(g.at("partial_rays"), "y");
    auto hp = nef_ci_polynomials(np, named_points(s.fx, g.at("partial_rays"), 'y'), MonomialSelection::VerticesOrigin, gauged, pvars);
    std::map<std::string, SparsePoly> chart;
    for (const auto& n : g.at("chart_ones")) chart["y" + n.get<std::string>()] = SparsePoly::constant(pvars, 1);
    for (std::size_t i = 0; i < hp.size() && i < 2; ++i) same(substitute(hp[i], chart), g["partial"][i], pvars, "partial g" + std::to_string(i));

    LatticePolytope d4 = LatticePolytope::hull(s.fx.vertices("delta4.json"));
    auto hrays = named_points(s.fx, g.at("hypersurface_rays"), 'z');
    auto hvars = prefixed(g.at("hypersurface_rays"), "z");
    CoefficientMap named, gauged_h;
    for (const auto& m : selected_points(hull_in_span(d4.vertices(), d4.rank()), MonomialSelection::Simplified)) {
        Exps e;
        for (const auto& v : hrays) e.push_back(static_cast<int>((dot(m, v) + 1).convert_to<long>()));
        std::string n = monomial_name(g.at("hypersurface_names"), e, hvars);
        c.expect(!n.empty(), "no coefficient name for hypersurface section " + str(m));
        if (n.empty()) continue;
        named[m] = ParamScalar::param(n);
        gauged_h[m] = parse_scalar(g.at("hypersurface_gauge").at(n));
    }
    SparsePoly h = anticanonical_polynomial(d4, hrays, MonomialSelection::Simplified, named, hvars);
    c.expect(h.terms().size() == 8, "hypersurface has " + std::to_string(h.terms().size()) + " terms");
    same(h, g.at("hypersurface"), hvars, "hypersurface");
    SparsePoly hg = anticanonical_polynomial(d4, hrays, MonomialSelection::Simplified, gauged_h, hvars);
    same(hg, g.at("hypersurface_gauged"), hvars, "gauged hypersurface");
    std::string text = hg.to_string(), suffix = g.at("hypersurface_gauged_suffix");
    c.expect(text.size() >= suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0,
             "gauged hypersurface does not end with " + suffix);
}

void chart(Session& s, Check& c) {
    const json& g = s.fx.golden().at("chart");
    auto vars = g.at("vars").get<std::vector<std::string>>();
    SparsePoly g1 = parse_poly(g.at("g1"), vars);
    std::map<std::string, SparsePoly> sub;
    for (const auto& [v, e] : g.at("substitution").items()) sub[v] = parse_poly(e, vars);
    SparsePoly r = substitute(g1, sub);
    std::vector<std::string> support;
    for (const auto& m : r.monomials()) {
        std::string t = r.monomial_string(m);
        support.push_back(t.empty() ? "1" : t);
    }
    c.expect(support == g.at("support").get<std::vector<std::string>>(), "monomial support differs");
    for (const auto& [mono, coef] : g.at("coefficients").items()) {
        ParamScalar got = r.coefficient(parse_poly(mono, vars).monomials().front());
        c.expect(got == parse_scalar(coef), "coefficient of " + mono + " is " + got.to_string());
    }
}

Int running_oracle(long m, long n) {
    if (n < 2 * m) return 0;
    Int gm = factorial(static_cast<int>(m));
    return factorial(static_cast<int>(2 * m)) * factorial(static_cast<int>(6 * n)) /
           (gm * gm * gm * gm * factorial(static_cast<int>(2 * n)) * factorial(static_cast<int>(3 * n)) *
            factorial(static_cast<int>(n - 2 * m)));
}

Int reindexed_oracle(int m, int n) {
    Int g = factorial(m);
    return factorial(2 * m) * factorial(12 * m + 6 * n) /
           (g * g * g * g * factorial(4 * m + 2 * n) * factorial(6 * m + 3 * n) * factorial(n));
}

GkzDegrees running_degrees(Session& s) {
    const NefPartition& np = s.nef();
    const json& names = s.fx.golden().at("equations").at("coefficient_names");
    auto rays = ten_rays(s.fx);
    return gkz_degrees(np, [&](int part, const Vec& m) {
        std::string n = monomial_name(names, part_exponents(np, static_cast<std::size_t>(part), m, rays), ten_vars());
        return n.empty() ? "?" : n;
    });
}

void gkz(Session& s, Check& c) {
    const json& g = s.fx.golden().at("gkz");
    const NefPartition& np = s.nef();

    Fan mirror = face_fan(polar(np.nabla));
    auto gens = mori_cone(mirror);
    auto want = g.at("mori").get<std::vector<std::vector<long>>>();
    std::multiset<std::vector<long>> expect(want.begin(), want.end()), got, swapped;
    if (gens.size() == 2 && gens[0].size() == want.size()) {
        for (std::size_t r = 0; r < gens[0].size(); ++r) {
            long a = gens[0][r].convert_to<long>(), b = gens[1][r].convert_to<long>();
            got.insert({a, b});
            swapped.insert({b, a});
        }
    }
    c.expect(got == expect || swapped == expect, "Mori generators differ from the printed matrix");

    GkzDegrees d = running_degrees(s);
    std::set<std::vector<long>> rows;
    for (std::size_t k = 0; k < d.moduli(); ++k) {
        std::vector<long> row;
        for (const auto& n : g.at("order")) {
            auto it = std::find(d.names.begin(), d.names.end(), n.get<std::string>());
            if (it == d.names.end()) {
                c.expect(false, "no coefficient named " + n.get<std::string>());
                return;
            }
            row.push_back(d.columns[static_cast<std::size_t>(it - d.names.begin())][k].convert_to<long>());
        }
        rows.insert(row);
    }
    auto drows = g.at("degrees").get<std::vector<std::vector<long>>>();
    c.expect(rows == std::set<std::vector<long>>(drows.begin(), drows.end()), "degree matrix differs");

    std::map<std::string, int> index;
    for (const auto& [label, text] : g.at("moduli").items()) {
        index[label] = -1;
        for (std::size_t k = 0; k < d.moduli(); ++k)
            if (d.moduli_monomials[k] == parse_scalar(text)) index[label] = static_cast<int>(k);
        c.expect(index[label] >= 0, "modulus " + label + " = " + text.get<std::string>() + " not found");
    }
    if (index["B0"] < 0 || index["B1"] < 0) return;
    auto at = [&](long m, long n) {
        std::vector<Int> k(d.moduli());
        k[static_cast<std::size_t>(index["B1"])] = m;
        k[static_cast<std::size_t>(index["B0"])] = n;
        return gkz_coefficient(d, k);
    };
    for (const auto& e : g.at("coefficients")) {
        Int v = at(e["B1"], e["B0"]);
        c.expect(v == Int(e["value"].get<long>()), "coefficient at B1^" + e["B1"].dump() + " B0^" + e["B0"].dump() + " is " + v.str());
    }
    for (long m = 0; m < 6; ++m)
        for (long n = 0; n < 6; ++n) c.expect(at(m, n) == running_oracle(m, n), "coefficient disagrees with the factorial oracle");

    GkzSeries ser = gkz_series_reindexed(d, 6);
    c.expect(ser.free == index["B1"] && ser.shifted == index["B0"], "reindexing picked unexpected generators");
    for (const auto& e : g.at("reindexed")) {
        auto it = ser.table.find({e["m"].get<int>(), e["n"].get<int>()});
        c.expect(it != ser.table.end() && it->second == Int(e["value"].get<long>()), "reindexed coefficient differs");
    }
    for (const auto& [mn, v] : ser.table) c.expect(v == reindexed_oracle(mn.first, mn.second), "reindexed coefficient disagrees with oracle");
}

void hodge(Session& s, Check& c) {
    const json& g = s.fx.golden().at("hodge");
    auto d4 = s.fx.vertices("delta4.json");
    HodgePair h = batyrev_hodge(LatticePolytope::hull(d4));
    c.expect(h.h11 == g["delta4.json"][0].get<long>() && h.h21 == g["delta4.json"][1].get<long>(),
             "Hodge numbers (" + h.h11.str() + ", " + h.h21.str() + ")");
    HodgePair m = batyrev_hodge(polar(LatticePolytope::hull(d4)));
    c.expect(m.h11 == h.h21 && m.h21 == h.h11, "mirror Hodge numbers are not swapped");
    HodgePair q = batyrev_hodge(polar(LatticePolytope::hull(vectors_from(g.at("quintic_dual_vertices")))));
    c.expect(q.h11 == g["quintic"][0].get<long>() && q.h21 == g["quintic"][1].get<long>(), "quintic Hodge numbers differ");
}

void kernels(Session& s, Check& c) {
    for (const auto& e : s.fx.golden().at("kernels")) {
        Mat pts = named_points(s.fx, e.at("points"), 'y');
        Mat k = kernel_basis(pts);
        c.expect(k == matrix_from(e.at("basis")), "kernel of " + e.at("points").dump() + " is " + to_string(k));
    }
}

void skeleton_ade(Session& s, Check& c) {
    const json& g = s.fx.golden().at("skeleton");
    LatticePolytope d = LatticePolytope::hull(s.fx.vertices(g.at("polytope")));
    LatticePolytope p = polar(d);
    for (const auto* x : {&d, &p}) {
        Int total = 0;
        for (const auto& e : x->faces(1)) total += Int(e.lstar) * Int(dual_face(*x, e).lstar);
        c.expect(total == g.at("edge_sum").get<long>(), "edge product sum is " + total.str());
    }
    for (const auto& e : g.at("ade")) {
        auto comps = ade_subgraph(p, vec_from(e.at("direction")));
        c.expect(comps.size() == e.at("components").get<std::size_t>(),
                 "direction " + e.at("direction").dump() + " gives " + std::to_string(comps.size()) + " components");
    }
}

void k3(Session& s, Check& c) {
    const json& g = s.fx.golden().at("k3");
    auto P = [](const char* t) { return parse_scalar(t); };
    YParams m = match_parameters(P("B"), P("psi0"), P("psi1"));
    c.expect(m.xi0 == parse_scalar(g["xi"]["xi0"]) && m.xi1 == parse_scalar(g["xi"]["xi1"]), "matched parameters differ");
    ModuliPoint z = fibre_params_Z(P("s"), P("t"), P("B"), P("psi0"), P("psi1"), -P("B"));
    ModuliPoint y = fibre_params_Y(P("s"), P("t"), m.xi0, m.xi1);
    c.expect(z.pi == y.pi && z.sigma == y.sigma, "symbolic identity fails");
    c.expect(fibre_params_Y(P("s"), P("t"), P("xi0"), ParamScalar(0)).sigma == ParamScalar(1), "sigma is not 1 when xi1 = 0");

    std::mt19937 rng(20);
    int done = 0, want = g.at("random_points");
    while (done < want) {
        ParamScalar B = random_rat(rng), p0 = random_rat(rng), p1 = random_rat(rng, false), st = random_rat(rng), tt = random_rat(rng);
        if ((st + tt).is_zero()) continue;
        YParams q = match_parameters(B, p0, p1);
        ModuliPoint a = fibre_params_Z(st, tt, B, p0, p1, -B), b = fibre_params_Y(st, tt, q.xi0, q.xi1);
        c.expect(a.pi == b.pi && a.sigma == b.sigma, "identity fails at a rational point");
        ++done;
    }
}

void locus(Session& s, Check& c) {
    const json& g = s.fx.golden().at("locus");
    FibreLocus one = singular_fibre_locus(parse_scalar(g.at("xi0")));
    c.expect(one.alpha == parse_scalar(g.at("alpha")) && one.beta == parse_scalar(g.at("beta")),
             "locus gives alpha = " + one.alpha.to_string() + ", beta = " + one.beta.to_string());
    std::mt19937 rng(13);
    for (int i = 0; i < g.at("random").get<int>(); ++i) {
        ParamScalar xi = random_rat(rng) / ParamScalar(1000000);
        FibreLocus f = singular_fibre_locus(xi);
        std::string v = "(" + xi.to_string() + ")";
        c.expect(f.alpha + f.beta == parse_scalar(replace_all(g.at("sum"), "xi0", v)), "alpha + beta differs at xi0 = " + xi.to_string());
        c.expect(f.alpha * f.beta == parse_scalar(replace_all(g.at("product"), "xi0", v)), "alpha * beta differs at xi0 = " + xi.to_string());
    }
}

void pullback_identity(Session& s, Check& c) {
    const json& g = s.fx.golden().at("pullback");
    const json& eq = s.fx.golden().at("equations");
    const FanMorphism& phi = s.phi();
    auto yv = names_of(s.fx, phi.domain.rays);
    auto zv = names_of(s.fx, phi.codomain.rays);

    MonomialMap mm = homogeneous_map(phi);
    std::map<std::string, MonomialImage> plain;
    for (std::size_t j = 0; j < zv.size(); ++j) {
        MonomialImage im;
        for (auto [r, e] : mm.images[j]) im.exponents[yv[static_cast<std::size_t>(r)]] = static_cast<int>(e.convert_to<long>());
        plain[zv[j]] = im;
    }
    SparsePoly r2 = parse_poly(eq.at("r2"), zv);
    SparsePoly r2p = pullback(r2, plain, yv);
    c.expect(r2p == parse_poly(g.at("r2_pulled"), yv), "pullback of r2 is " + r2p.to_string());

    // the resolved hypersurface splits as q2*z334 + r2 minus one extra monomial
    SparsePoly h2 = parse_poly("(" + eq.at("q2").get<std::string>() + ")*z334 + " + eq.at("r2").get<std::string>(), zv);
    LatticePolytope d4 = LatticePolytope::hull(s.fx.vertices("delta4.json"));
    auto six = named_points(s.fx, eq.at("hypersurface_rays"), 'z');
    auto six_vars = prefixed(eq.at("hypersurface_rays"), "z");
    CoefficientMap gauged;
    for (const auto& m : selected_points(hull_in_span(d4.vertices(), d4.rank()), MonomialSelection::Simplified)) {
        Exps e;
        for (const auto& v : six) e.push_back(static_cast<int>((dot(m, v) + 1).convert_to<long>()));
        std::string n = monomial_name(eq.at("hypersurface_names"), e, six_vars);
        if (!n.empty()) gauged[m] = parse_scalar(eq.at("hypersurface_gauge").at(n));
    }
    SparsePoly h = anticanonical_polynomial(d4, phi.codomain.rays, MonomialSelection::Simplified, gauged, zv);
    c.expect(h == h2 - parse_poly(eq.at("resolved_shift"), zv), "resolved hypersurface does not split as q2*z334 + r2");

    std::map<std::string, MonomialImage> psi = plain;
    for (const auto& [zn, k] : g.at("scalings").items()) psi.at("z" + zn).scalar = parse_scalar(k);
    YParams xi = match_parameters(parse_scalar("B"), parse_scalar("psi0"), parse_scalar("psi1"));
    std::string g1 = replace_all(replace_all(eq.at("partial")[1], "xi0", "(" + xi.xi0.to_string() + ")"), "xi1",
                                 "(" + xi.xi1.to_string() + ")");
    SparsePoly g0 = parse_poly(eq.at("partial")[0], yv);
    SparsePoly lhs = pullback(h2, psi, yv) * parse_scalar(g.at("multiplier")) - parse_poly(g.at("g1_factor"), yv) * parse_poly(g1, yv);
    std::string var = "y" + g.at("divide_by").get<std::string>();
    PseudoDivision d = pseudo_divide(lhs, g0, var);
    c.expect(!lhs.is_zero() && d.remainder.is_zero(), "pseudo-division leaves a nonzero remainder");
    SparsePoly lc = g0.coefficient_of(var, g0.degree(var));
    c.expect(lc.pow(d.power) * lhs == d.quotient * g0 + d.remainder, "pseudo-division certificate fails");

    for (const auto& pr : g.at("disjoint")) {
        int a = phi.domain.ray_index(s.fx.y(pr[0])), b = phi.domain.ray_index(s.fx.y(pr[1]));
        bool together = std::any_of(phi.domain.cones.begin(), phi.domain.cones.end(), [&](const RaySet& cone) {
            return std::find(cone.begin(), cone.end(), a) != cone.end() && std::find(cone.begin(), cone.end(), b) != cone.end();
        });
        c.expect(a >= 0 && b >= 0 && !together, "y" + pr[0].get<std::string>() + " and y" + pr[1].get<std::string>() + " share a chart");
    }
}

// "(123)(45)" or "id" on points 1..n.
Perm parse_cycles(const std::string& text, int n) {
    Perm p = identity_perm(n);
    std::vector<int> cyc;
    for (char ch : text) {
        if (ch == '(') cyc.clear();
        else if (std::isdigit(static_cast<unsigned char>(ch))) cyc.push_back(ch - '1');
        else if (ch == ')')
            for (std::size_t k = 0; k < cyc.size(); ++k) p.at(static_cast<std::size_t>(cyc[k])) = cyc[(k + 1) % cyc.size()];
    }
    return p;
}

void monodromy(Session& s, Check& c) {
    const json& g = s.fx.golden().at("monodromy");
    RootFamily plus = parse_family(g["families"][0]), minus = parse_family(g["families"][1]);
    GaussRat base = parse_gauss(g.at("base"));
    PrecisionGuard guard(g.at("precision").get<unsigned>());
    TrackOptions opt;
    opt.precision = g.at("precision");
    Real tol(g.at("residual").get<double>());

    std::vector<SingularValue> extra;
    for (const auto& sv : singular_parameters(plus))
        if (abs(sv.value) > Real("0.5") && abs(Real(sv.value.re)) > Real(1e-30)) extra.push_back(sv);
    if (extra.size() != 2) {
        c.expect(false, "expected two extra singular values of the first cubic, found " + std::to_string(extra.size()));
        return;
    }
    auto neg = [](const Cx& z) { return Cx{-z.re, -z.im}; };
    std::map<std::string, Cx> centers = {{"0", to_cx(GaussRat(0))}, {"i", to_cx(GaussRat(0, 1))}, {"-i", to_cx(GaussRat(0, -1))},
                                         {"alpha'", extra[0].value}, {"-alpha'", neg(extra[0].value)},
                                         {"beta'", extra[1].value}, {"-beta'", neg(extra[1].value)}};

    std::vector<Perm> got, printed;
    for (const auto& row : g.at("table")) {
        std::string pt = row.at("point");
        Perm e0 = parse_cycles(row["cycles"][0], 3), e1 = parse_cycles(row["cycles"][1], 6);
        Perm both = e0;
        for (int k = 3; k < 6; ++k) both.push_back(e1[static_cast<std::size_t>(k)]);
        printed.push_back(both);
        Perm e1_local(e1.begin() + 3, e1.end());
        for (auto& v : e1_local) v -= 3;

        bool inf = pt == "infinity";
        Loop lp = inf ? loop_around_infinity(plus, base) : loop_around(plus, base, centers.at(pt));
        Loop lm = inf ? loop_around_infinity(minus, base) : loop_around(minus, base, centers.at(pt));
        TrackResult rp = track_roots(plus, lp, opt), rm = track_roots(minus, lm, opt);
        c.expect(cycle_type(rp.perm) == cycle_type(e0) && cycle_type(rm.perm) == cycle_type(e1_local),
                 "loop about " + pt + " gives " + cycle_notation(rp.perm) + " / " + cycle_notation(rm.perm));
        c.expect(rp.max_residual < tol && rm.max_residual < tol, "residual too large on the loop about " + pt);
        Perm pair = rp.perm;
        for (int v : rm.perm) pair.push_back(v + 3);
        got.push_back(pair);
    }
    std::size_t order = g.at("group_order");
    c.expect(generated_group_order(printed) == order, "printed permutations do not generate a group of the stated order");
    c.expect(generated_group_order(got) == order, "tracked permutations generate a group of order " + std::to_string(generated_group_order(got)));
    for (const RootFamily* f : {&plus, &minus}) {
        Perm total = identity_perm(3);
        for (const auto& l : monodromy_all(*f, base, opt)) total = compose(total, l.result.perm);
        c.expect(is_identity(total), "product of all loops is " + cycle_notation(total));
    }
}

void kodaira(Session& s, Check& c) {
    for (const auto& e : s.fx.golden().at("kodaira")) {
        MonodromyMatrix m = power_monodromy(parse_matrix(e.at("matrix")), e.at("power"));
        c.expect(m == parse_matrix(e.at("result")), e.at("matrix").get<std::string>() + " to the power gives " + to_string(m));
        std::string f = classify_kodaira(m).name();
        c.expect(f == e.at("fibre").get<std::string>(), "fibre type " + f);
    }
}

// Property suites -------------------------------------------------------------------------------

Mat random_unimodular(std::mt19937& rng, std::size_t n) {
    Mat g = identity(n);
    std::uniform_int_distribution<int> k(-2, 2);
    for (int step = 0; step < 6; ++step) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) {
            g[i] = neg(g[i]);
            continue;
        }
        g[i] = add(g[i], scale(g[j], Int(k(rng))));
    }
    return g;
}

void polar_property(Session& s, Check& c, int cases) {
    std::vector<std::vector<Vec>> bases = {s.fx.vertices("delta3.json"), s.fx.vertices("slice.json"),
                                           s.fx.vertices("base2_polar.json"),
                                           {make_vec({1, 0}), make_vec({1, 1}), make_vec({0, 1}), make_vec({-1, 0}),
                                            make_vec({-1, -1}), make_vec({0, -1})}};
    std::mt19937 rng(101);
    for (int it = 0; it < cases; ++it) {
        const auto& b = bases[static_cast<std::size_t>(it) % bases.size()];
        std::size_t n = b.front().size();
        Mat g = random_unimodular(rng, n);
        std::vector<Vec> moved;
        for (const auto& v : b) moved.push_back(mul(v, g));
        LatticePolytope p = LatticePolytope::hull(moved), q = polar(p);
        c.expect(polar(q) == p, "polar is not an involution");
        // <v g, w> = <v, w g^T>, so polar vertices pull back along g^T
        VecSet back;
        for (const auto& w : q.vertices()) back.insert(mul(w, transpose(g, n)));
        c.expect(back == as_set(polar(LatticePolytope::hull(b)).vertices()), "polar does not commute with a unimodular map");
        for (int k = 0; k < static_cast<int>(n); ++k)
            c.expect(p.faces(k).size() == q.faces(static_cast<int>(n) - 1 - k).size(), "face counts are not dual");
    }
}

void nef_property(Check& c, int cases) {
    std::vector<std::vector<Vec>> polys = {
        {make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, -1})},
        {make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, 0}), make_vec({0, -1})},
        {make_vec({1, 0}), make_vec({1, 1}), make_vec({0, 1}), make_vec({-1, 0}), make_vec({-1, -1}), make_vec({0, -1})},
        {make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, -2})},
        {make_vec({1, 0}), make_vec({1, 1}), make_vec({0, 1}), make_vec({-1, 0}), make_vec({0, -1})}};
    int valid = 0;
    for (const auto& cyc : polys) {
        LatticePolytope dp = LatticePolytope::hull(cyc), delta = polar(dp);
        std::size_t k = cyc.size(), total = 1;
        for (std::size_t i = 0; i < k; ++i) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<std::vector<Vec>> parts(3);
            std::size_t x = code;
            for (std::size_t i = 0; i < k; ++i, x /= 3) parts[x % 3].push_back(cyc[i]);
            while (!parts.empty() && parts.back().empty()) parts.pop_back();
            if (std::any_of(parts.begin(), parts.end(), [](const auto& p) { return p.empty(); })) continue;
            NefPartition np;
            try {
                np = make_nef_partition(delta, parts);
            } catch (const Error&) {
                continue;
            }
            ++valid;
            std::vector<Vec> nu, du, dsum{make_vec({0, 0})}, nsum{make_vec({0, 0})};
            for (std::size_t i = 0; i < np.parts.size(); ++i) {
                auto nv = np.nabla_i[i].ambient_vertices(), dv = np.delta_i[i].ambient_vertices();
                nu.insert(nu.end(), nv.begin(), nv.end());
                du.insert(du.end(), dv.begin(), dv.end());
                std::vector<Vec> a, b;
                for (const auto& p : dsum)
                    for (const auto& q : dv) a.push_back(add(p, q));
                for (const auto& p : nsum)
                    for (const auto& q : nv) b.push_back(add(p, q));
                dsum = a;
                nsum = b;
            }
            c.expect(LatticePolytope::hull(nu) == dp, "union of the nabla pieces is not the polar");
            c.expect(LatticePolytope::hull(du) == polar(np.nabla), "union of the delta pieces is not the polar of nabla");
            c.expect(LatticePolytope::hull(dsum) == delta, "delta pieces do not sum to delta");
            c.expect(LatticePolytope::hull(nsum) == np.nabla, "nabla pieces do not sum to nabla");
        }
    }
    c.expect(valid >= cases, "only " + std::to_string(valid) + " nef-partitions checked");
}

bool is_hermite(const Mat& h) {
    std::size_t r = 0;
    long prev = -1;
    for (; r < h.size(); ++r) {
        std::size_t p = 0;
        while (p < h[r].size() && h[r][p] == 0) ++p;
        if (p == h[r].size()) break;
        if (static_cast<long>(p) <= prev || h[r][p] <= 0) return false;
        for (std::size_t i = 0; i < r; ++i)
            if (h[i][p] < 0 || h[i][p] >= h[r][p]) return false;
        prev = static_cast<long>(p);
    }
    for (; r < h.size(); ++r)
        if (!is_zero(h[r])) return false;
    return true;
}

void lattice_property(Check& c, int cases) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int it = 0; it < cases; ++it) {
        std::size_t r = 2 + rng() % 4, n = 1 + rng() % 4;
        Mat m(r, Vec(n));
        for (auto& row : m)
            for (auto& x : row) x = d(rng);
        if (r > 2) m[r - 1] = add(scale(m[0], Int(2)), scale(m[1], Int(-3)));
        auto [h, u] = hermite_form(m, n);
        c.expect(mul(u, m) == h && abs(det(u)) == 1 && is_hermite(h), "Hermite certificate fails");
        Mat k = kernel_basis(m, n);
        for (const auto& v : k) c.expect(is_zero(mul(v, m)), "kernel vector does not annihilate");
        c.expect(k.size() == r - rank(m), "kernel has the wrong rank");
        if (!k.empty()) c.expect(saturation(k, r).basis == k, "kernel basis is not saturated");
    }
}

SparsePoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars) {
    std::uniform_int_distribution<int> co(-3, 3), e(0, 2), n(0, 4);
    SparsePoly p(vars);
    int terms = n(rng);
    for (int t = 0; t < terms; ++t) {
        Exps x(vars.size());
        for (auto& v : x) v = e(rng);
        ParamScalar k = Rat(co(rng), 1 + static_cast<int>(rng() % 3));
        if (rng() % 2) k = k * ParamScalar::param(rng() % 2 ? "a" : "b");
        p.add_term(x, k);
    }
    return p;
}

void division_property(Check& c, int cases) {
    std::mt19937 rng(9);
    std::vector<std::string> vars = {"x", "y"};
    int done = 0;
    while (done < cases) {
        SparsePoly f = random_poly(rng, vars), g = random_poly(rng, vars);
        if (g.is_zero() || g.degree("x") <= 0) continue;
        PseudoDivision d = pseudo_divide(f, g, "x");
        SparsePoly lc = g.coefficient_of("x", g.degree("x"));
        c.expect((lc.pow(d.power) * f - d.quotient * g - d.remainder).is_zero(), "pseudo-division certificate fails");
        c.expect(d.remainder.degree("x") < g.degree("x"), "remainder degree too large");
        ++done;
    }
}

void gkz_property(Session& s, Check& c, int cases) {
    GkzDegrees d = running_degrees(s);
    int b0 = -1, b1 = -1;
    const json& moduli = s.fx.golden().at("gkz").at("moduli");
    for (std::size_t k = 0; k < d.moduli(); ++k) {
        if (d.moduli_monomials[k] == parse_scalar(moduli.at("B0"))) b0 = static_cast<int>(k);
        if (d.moduli_monomials[k] == parse_scalar(moduli.at("B1"))) b1 = static_cast<int>(k);
    }
    if (b0 < 0 || b1 < 0) {
        c.expect(false, "moduli not found");
        return;
    }
    int side = 1;
    while (side * side < cases) ++side;
    for (int m = 0; m < side; ++m)
        for (int n = 0; n < side; ++n) {
            std::vector<Int> k(d.moduli());
            k[static_cast<std::size_t>(b1)] = m;
            k[static_cast<std::size_t>(b0)] = n;
            Int v = gkz_coefficient(d, k);
            c.expect(v >= 0, "negative GKZ coefficient");
            if (n >= 2 * m) {
                Int g = factorial(m);
                Rat q(factorial(2 * m) * factorial(6 * n),
                      g * g * g * g * factorial(2 * n) * factorial(3 * n) * factorial(n - 2 * m));
                c.expect(denominator(q) == 1 && numerator(q) == v, "GKZ coefficient is not the integral factorial ratio");
            } else {
                c.expect(v == 0, "GKZ coefficient outside the support is nonzero");
            }
        }
}

MonodromyMatrix M(long a, long b, long c, long d) { return {{{GaussRat(a), GaussRat(b)}, {GaussRat(c), GaussRat(d)}}}; }

void kodaira_property(Check& c, int cases) {
    std::vector<MonodromyMatrix> reps = {M(1, 0, 0, 1),  M(1, 1, 0, 1),   M(1, 3, 0, 1),  M(-1, 0, 0, -1), M(-1, -2, 0, -1),
                                         M(1, 1, -1, 0), M(0, 1, -1, 0),  M(0, 1, -1, -1), M(0, -1, 1, 1), M(-1, -1, 1, 0),
                                         M(0, -1, 1, 0), M(1, -1, 1, 0)};
    std::vector<std::pair<MonodromyMatrix, MonodromyMatrix>> gens = {
        {M(0, -1, 1, 0), M(0, 1, -1, 0)}, {M(1, 1, 0, 1), M(1, -1, 0, 1)}, {M(1, -1, 0, 1), M(1, 1, 0, 1)}};
    std::mt19937 rng(23);
    for (int it = 0; it < cases; ++it) {
        const MonodromyMatrix& a = reps[static_cast<std::size_t>(it) % reps.size()];
        MonodromyMatrix w = M(1, 0, 0, 1), winv = w;
        int len = 1 + static_cast<int>(rng() % 6);
        for (int k = 0; k < len; ++k) {
            const auto& [x, xi] = gens[rng() % gens.size()];
            w = mat_mul(w, x);
            winv = mat_mul(xi, winv);
        }
        MonodromyMatrix b = mat_mul(mat_mul(w, a), winv);
        c.expect(classify_kodaira(b).name() == classify_kodaira(a).name(),
                 "conjugation changes the type of " + to_string(a));
    }
}

void properties(Session& s, Check& c) {
    int n = s.fx.golden().at("properties").at("cases");
    std::size_t before = 0;
    auto suite = [&](const std::string& name, const std::function<void()>& f) {
        f();
        for (std::size_t k = before; k < c.failures.size(); ++k) c.failures[k] = name + ": " + c.failures[k];
        before = c.failures.size();
    };
    suite("polar", [&] { polar_property(s, c, n); });
    suite("nef", [&] { nef_property(c, n); });
    suite("lattice", [&] { lattice_property(c, n); });
    suite("pseudo-division", [&] { division_property(c, n); });
    suite("gkz", [&] { gkz_property(s, c, n); });
    suite("kodaira", [&] { kodaira_property(c, n); });
}

using Runner = void (*)(Session&, Check&);

const std::vector<std::pair<Criterion, Runner>>& table() {
    static const std::vector<std::pair<Criterion, Runner>> t = {
        {{1, {"reflexive", "polytope"}, "reflexivity and duality"}, reflexive},
        {{2, {"fans"}, "face fan counts"}, fans},
        {{3, {"normal-fan"}, "normal fan of the slice"}, normal},
        {{4, {"fibration"}, "fibration verdicts and kernel fan"}, fibration},
        {{5, {"maps"}, "homogeneous maps"}, maps},
        {{6, {"cy", "equations"}, "Calabi-Yau equations"}, equations},
        {{7, {"chart"}, "chart elimination"}, chart},
        {{8, {"gkz", "mori"}, "Mori cone and GKZ data"}, gkz},
        {{9, {"hodge"}, "Hodge numbers"}, hodge},
        {{10, {"kernel"}, "kernel relations"}, kernels},
        {{11, {"skeleton", "ade"}, "edge products and ADE subgraphs"}, skeleton_ade},
        {{12, {"k3"}, "K3 fibre matching"}, k3},
        {{13, {"singular-locus"}, "singular fibre loci"}, locus},
        {{14, {"pullback"}, "pullback identity and chart checks"}, pullback_identity},
        {{15, {"monodromy"}, "monodromy of the fixed-point cubics"}, monodromy},
        {{16, {"kodaira"}, "monodromy powers and Kodaira types"}, kodaira},
        {{17, {"properties"}, "property suites"}, properties},
    };
    return t;
}

bool selected(const Criterion& c, const std::string& sel) {
    return sel == std::to_string(c.id) || std::find(c.tags.begin(), c.tags.end(), sel) != c.tags.end();
}

}  // namespace

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> out = [] {
        std::vector<Criterion> v;
        for (const auto& [c, r] : table()) v.push_back(c);
        return v;
    }();
    return out;
}

std::vector<Outcome> run_criteria(const Fixtures& fx, const std::vector<std::string>& only) {
    for (const auto& sel : only)
        if (std::none_of(table().begin(), table().end(), [&](const auto& e) { return selected(e.first, sel); }))
            throw Error("unknown_criterion", "no criterion matches '" + sel + "'", sel);
    Session session(fx);
    std::vector<Outcome> out;
    for (const auto& [crit, run] : table()) {
        if (!only.empty() && std::none_of(only.begin(), only.end(), [&](const std::string& s) { return selected(crit, s); }))
            continue;
        Outcome o{crit.id, crit.tags.front(), crit.title, false, {}, 0};
        Check check;
        auto t0 = Clock::now();
        try {
            run(session, check);
        } catch (const Error& e) {
            check.failures.push_back(e.code() + ": " + e.what());
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        o.failures = check.failures;
        o.pass = o.failures.empty();
        out.push_back(o);
    }
    return out;
}

std::string format_outcome(const Outcome& o) {
    std::ostringstream s;
    s << (o.pass ? "PASS" : "FAIL") << "  " << (o.id < 10 ? " " : "") << o.id << "  " << o.tag << ": " << o.title;
    if (!o.pass) {
        s << " -- " << o.failures.front();
        if (o.failures.size() > 1) s << " (+" << o.failures.size() - 1 << " more)";
    }
    return s.str();
}

json outcome_json(const Outcome& o) {
    return {{"id", o.id}, {"tag", o.tag}, {"title", o.title}, {"pass", o.pass}, {"failures", o.failures}};
}

}  // namespace toric::repro
