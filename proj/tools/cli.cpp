#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "reproduce.hpp"
#include "toric/cy.hpp"
#include "toric/error.hpp"
#include "toric/k3.hpp"
#include "toric/monodromy.hpp"
#include "toric/poly.hpp"

using namespace toric;
using repro::json;

namespace {

struct Global {
    bool json = false;
    std::string out;
    unsigned precision = 128;
};

// Exit status requested by a command that completed but reports failure.
struct Status {
    int code;
};

void emit(const Global& g, const json& j, const std::string& text) {
    std::string body = g.json ? j.dump(2) + "\n" : text;
    if (g.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw std::runtime_error("cannot write " + g.out);
    f << body;
}

std::string lines(const std::vector<Vec>& vs) {
    std::string s;
    for (const auto& v : vs) s += to_string(v) + "\n";
    return s;
}

// "a,b;c,d" rows of a row-vector matrix. A single row with rank 1 codomain is read as a column.
Mat parse_int_matrix(const std::string& text, std::size_t domain_rank, std::size_t codomain_rank) {
    Mat m;
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        Vec v;
        std::stringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            cell.erase(0, cell.find_first_not_of(" \t"));
            cell.erase(cell.find_last_not_of(" \t") + 1);
            try {
                v.push_back(Int(cell));
            } catch (const std::exception&) {
                throw Error("parse_error", "bad matrix entry '" + cell + "'", text);
            }
        }
        m.push_back(v);
    }
    if (m.size() == 1 && codomain_rank == 1 && m[0].size() == domain_rank) m = transpose(m, domain_rank);
    if (m.size() != domain_rank) throw Error("dimension", "matrix needs one row per domain coordinate", text);
    for (const auto& r : m)
        if (r.size() != codomain_rank) throw Error("dimension", "matrix rows need one entry per codomain coordinate", text);
    return m;
}

FanMorphism morphism(const std::string& matrix, const std::string& domain, const std::string& codomain) {
    Fan d = repro::fan_from(repro::read_json(domain)), c = repro::fan_from(repro::read_json(codomain));
    return check_compatibility(parse_int_matrix(matrix, d.rank, c.rank), d, c);
}

std::string x_name(int i) { return "x" + std::to_string(i); }

json perm_json(const Perm& p) { return {{"image", p}, {"cycles", cycle_notation(p)}, {"cycle_type", cycle_type(p)}}; }

std::string real_str(const Real& r) { return r.str(6, std::ios_base::scientific); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toric geometry toolkit"};
    app.require_subcommand(1);
    Global g;
    app.add_flag("--json", g.json, "print JSON");
    app.add_option("--out", g.out, "write output to a file");
    app.add_option("--precision", g.precision, "working precision in bits for numerical commands");
    std::function<void()> action;

    // polytope ------------------------------------------------------------------------------------
    auto* poly = app.add_subcommand("polytope", "lattice polytopes");
    poly->require_subcommand(1);
    std::string in;
    auto* polar_cmd = poly->add_subcommand("polar", "vertices of the polar polytope");
    polar_cmd->add_option("--in", in, "polytope JSON")->required();
    polar_cmd->callback([&] {
        action = [&] {
            LatticePolytope q = polar(repro::polytope_from(repro::read_json(in)));
            emit(g, {{"vertices", repro::to_json(q.vertices())}}, lines(q.vertices()));
        };
    });
    auto* info_cmd = poly->add_subcommand("info", "reflexivity, lattice points and face counts");
    info_cmd->add_option("--in", in, "polytope JSON")->required();
    info_cmd->callback([&] {
        action = [&] {
            LatticePolytope p = repro::polytope_from(repro::read_json(in));
            std::vector<std::size_t> f;
            for (int d = 0; d < static_cast<int>(p.rank()); ++d) f.push_back(p.faces(d).size());
            bool refl = is_reflexive(p);
            json j = {{"rank", p.rank()},        {"vertices", repro::to_json(p.vertices())}, {"points", p.points().size()},
                      {"interior_points", p.interior_points().size()}, {"faces", f},       {"reflexive", refl}};
            std::ostringstream s;
            s << "rank: " << p.rank() << "\nvertices: " << p.vertices().size() << "\npoints: " << p.points().size()
              << "\ninterior points: " << p.interior_points().size() << "\nfaces:";
            for (auto n : f) s << " " << n;
            s << "\nreflexive: " << (refl ? "true" : "false") << "\n";
            emit(g, j, s.str());
        };
    });
    auto* points_cmd = poly->add_subcommand("points", "all lattice points");
    points_cmd->add_option("--in", in, "polytope JSON")->required();
    points_cmd->callback([&] {
        action = [&] {
            LatticePolytope p = repro::polytope_from(repro::read_json(in));
            emit(g, {{"points", repro::to_json(p.points())}}, lines(p.points()));
        };
    });

    // fan -----------------------------------------------------------------------------------------
    auto* fan = app.add_subcommand("fan", "fans and fan morphisms");
    fan->require_subcommand(1);
    std::string matrix, domain, codomain;
    auto morphism_opts = [&](CLI::App* c) {
        c->add_option("--matrix", matrix, "lattice map, rows separated by ';'")->required();
        c->add_option("--domain", domain, "domain fan JSON")->required();
        c->add_option("--codomain", codomain, "codomain fan JSON")->required();
    };
    auto* fan_info = fan->add_subcommand("info", "rays, cones and classification");
    fan_info->add_option("--in", in, "fan JSON")->required();
    fan_info->callback([&] {
        action = [&] {
            Fan f = repro::fan_from(repro::read_json(in));
            FanClass k = classify(f);
            json j = repro::fan_to_json(f);
            j["simplicial"] = k.simplicial;
            j["smooth"] = k.smooth;
            j["complete"] = k.complete;
            std::ostringstream s;
            s << "rays: " << f.rays.size() << "\ncones: " << f.cones.size() << "\nsimplicial: " << k.simplicial
              << "\nsmooth: " << k.smooth << "\ncomplete: " << k.complete << "\n";
            emit(g, j, s.str());
        };
    });
    auto* fib = fan->add_subcommand("fibration-check", "is the morphism a toric fibration");
    morphism_opts(fib);
    fib->callback([&] {
        action = [&] {
            bool ok = is_fibration(morphism(matrix, domain, codomain));
            emit(g, {{"fibration", ok}}, std::string("fibration: ") + (ok ? "true" : "false") + "\n");
        };
    });
    auto* fmap = fan->add_subcommand("map", "homogeneous coordinate map in bracket notation");
    std::string names;
    morphism_opts(fmap);
    fmap->add_option("--names", names, "points JSON naming the domain rays (default x<index>)");
    fmap->callback([&] {
        action = [&] {
            FanMorphism phi = morphism(matrix, domain, codomain);
            json pts = names.empty() ? json::object() : repro::read_json(names);
            auto name = [&](int r) {
                std::string n = repro::point_name(pts, phi.domain.rays[static_cast<std::size_t>(r)]);
                return n.empty() ? x_name(r) : n;
            };
            MonomialMap mm = homogeneous_map(phi);
            json imgs = json::array();
            for (const auto& img : mm.images) {
                json one = json::object();
                for (auto [r, e] : img) one[name(r)] = e.convert_to<long long>();
                imgs.push_back(one);
            }
            emit(g, {{"images", imgs}}, repro::bracket_notation(phi, name) + "\n");
        };
    });
    auto* fker = fan->add_subcommand("kernel", "fibre fan in the kernel sublattice");
    morphism_opts(fker);
    fker->callback([&] {
        action = [&] {
            KernelFan kf = kernel_fan(morphism(matrix, domain, codomain));
            json j = {{"rays", repro::to_json(kf.ambient_rays)}, {"basis", repro::to_json(kf.lattice.basis)}};
            emit(g, j, "rays:\n" + lines(kf.ambient_rays) + "basis:\n" + lines(kf.lattice.basis));
        };
    });
    auto* fmori = fan->add_subcommand("mori", "Mori cone generators (last entry: origin)");
    fmori->add_option("--in", in, "fan JSON")->required();
    fmori->callback([&] {
        action = [&] {
            auto gens = mori_cone(repro::fan_from(repro::read_json(in)));
            emit(g, {{"generators", repro::to_json(gens)}}, lines(gens));
        };
    });

    // cy ------------------------------------------------------------------------------------------
    auto* cy = app.add_subcommand("cy", "Calabi-Yau data");
    cy->require_subcommand(1);
    std::string mode = "all";
    int max_total = 4;
    auto load_nef = [&]() {
        json j = repro::read_json(in);
        auto verts = repro::vectors_from(j.at("polar_vertices"));
        std::vector<std::vector<Vec>> parts;
        for (const auto& p : j.at("parts")) {
            parts.emplace_back();
            for (const auto& i : p) parts.back().push_back(verts.at(i.get<std::size_t>()));
        }
        return std::make_pair(make_nef_partition(polar(LatticePolytope::hull(verts)), parts), verts);
    };
    auto* cy_eq = cy->add_subcommand("equations", "complete intersection equations of a nef-partition");
    cy_eq->add_option("--in", in, "nef-partition JSON")->required();
    cy_eq->add_option("--mode", mode, "all | vertices | simplified")->check(CLI::IsMember({"all", "vertices", "simplified"}));
    cy_eq->callback([&] {
        action = [&] {
            auto [np, verts] = load_nef();
            MonomialSelection sel = mode == "all" ? MonomialSelection::All
                                    : mode == "vertices" ? MonomialSelection::VerticesOrigin : MonomialSelection::Simplified;
            std::vector<std::string> names;
            for (std::size_t i = 0; i < verts.size(); ++i) names.push_back("y" + std::to_string(i));
            auto eqs = nef_ci_polynomials(np, verts, sel, {}, names);
            json j = json::array();
            std::string s;
            for (std::size_t i = 0; i < eqs.size(); ++i) {
                j.push_back(eqs[i].to_string());
                s += "g" + std::to_string(i) + " = " + eqs[i].to_string() + "\n";
            }
            emit(g, {{"equations", j}}, s);
        };
    });
    auto* cy_hodge = cy->add_subcommand("hodge", "Hodge numbers of the anticanonical hypersurface");
    cy_hodge->add_option("--in", in, "four-dimensional reflexive polytope JSON")->required();
    cy_hodge->callback([&] {
        action = [&] {
            HodgePair h = batyrev_hodge(repro::polytope_from(repro::read_json(in)));
            emit(g, {{"h11", h.h11.convert_to<long long>()}, {"h21", h.h21.convert_to<long long>()}},
                 "h11 = " + h.h11.str() + "\nh21 = " + h.h21.str() + "\n");
        };
    });
    auto* cy_gkz = cy->add_subcommand("gkz", "GKZ degrees, moduli and series coefficients");
    cy_gkz->add_option("--in", in, "nef-partition JSON")->required();
    cy_gkz->add_option("--max-total", max_total, "largest total degree of the series table");
    cy_gkz->callback([&] {
        action = [&] {
            GkzDegrees d = gkz_degrees(load_nef().first);
            json moduli = json::array(), cols = json::object(), series = json::array();
            std::ostringstream s;
            for (const auto& m : d.moduli_monomials) {
                moduli.push_back(m.to_string());
                s << "modulus: " << m.to_string() << "\n";
            }
            for (std::size_t j = 0; j < d.columns.size(); ++j) {
                cols[d.names[j]] = repro::to_json(d.columns[j]);
                s << d.names[j] << ": " << to_string(d.columns[j]) << "\n";
            }
            json out = {{"moduli", moduli}, {"degrees", cols}};
            if (d.moduli() == 2) {
                GkzSeries ser = gkz_series_reindexed(d, max_total);
                for (const auto& [mn, c] : ser.table) {
                    series.push_back({{"m", mn.first}, {"n", mn.second}, {"value", c.str()}});
                    s << "c(" << mn.first << ", " << mn.second << ") = " << c << "\n";
                }
                out["series"] = {{"free", ser.free}, {"shifted", ser.shifted}, {"shift", ser.shift.str()}, {"table", series}};
            }
            emit(g, out, s.str());
        };
    });

    // k3 ------------------------------------------------------------------------------------------
    auto* k3 = app.add_subcommand("k3", "K3 fibre parameters");
    k3->require_subcommand(1);
    std::string B = "B", psi0 = "psi0", psi1 = "psi1", xi0 = "xi0", pi, sigma;
    auto* match = k3->add_subcommand("match", "complete intersection parameters matching a hypersurface");
    match->add_option("--B", B, "hypersurface parameter (symbolic by default)");
    match->add_option("--psi0", psi0, "hypersurface parameter");
    match->add_option("--psi1", psi1, "hypersurface parameter");
    match->callback([&] {
        action = [&] {
            YParams m = match_parameters(parse_scalar(B), parse_scalar(psi0), parse_scalar(psi1));
            emit(g, {{"xi0", m.xi0.to_string()}, {"xi1", m.xi1.to_string()}},
                 "xi0 = " + m.xi0.to_string() + "\nxi1 = " + m.xi1.to_string() + "\n");
        };
    });
    auto* loc = k3->add_subcommand("locus", "extra singular fibres alpha, beta");
    loc->add_option("--xi0", xi0, "complete intersection parameter");
    loc->callback([&] {
        action = [&] {
            FibreLocus f = singular_fibre_locus(parse_scalar(xi0));
            emit(g, {{"alpha", f.alpha.to_string()}, {"beta", f.beta.to_string()}, {"rational", f.rational}},
                 "alpha = " + f.alpha.to_string() + "\nbeta = " + f.beta.to_string() + "\n");
        };
    });
    auto* jinv = k3->add_subcommand("j", "j-invariants from pi and sigma");
    jinv->add_option("--pi", pi, "product of the two j-invariants")->required();
    jinv->add_option("--sigma", sigma, "sum of the two j-invariants")->required();
    jinv->callback([&] {
        action = [&] {
            JRoots r = j_invariants({parse_scalar(pi), parse_scalar(sigma)});
            emit(g, {{"j1", r.j1.to_string()}, {"j2", r.j2.to_string()}, {"rational", r.rational}},
                 "j1 = " + r.j1.to_string() + "\nj2 = " + r.j2.to_string() + "\n");
        };
    });

    // monodromy -----------------------------------------------------------------------------------
    auto* mono = app.add_subcommand("monodromy", "root monodromy and Kodaira fibres");
    mono->require_subcommand(1);
    std::string family, center, base, radius, kmatrix;
    int power = 1;
    auto* track = mono->add_subcommand("track", "permutation of the roots in y along one loop");
    track->add_option("--family", family, "polynomial in x and y")->required();
    track->add_option("--center", center, "encircled point, or 'inf'")->required();
    track->add_option("--base", base, "base point")->required();
    track->add_option("--radius", radius, "loop radius (default: chosen from the singular values)");
    track->callback([&] {
        action = [&] {
            RootFamily f = parse_family(family);
            PrecisionGuard guard(g.precision);
            GaussRat b = parse_gauss(base);
            Loop lp;
            if (center == "inf" || center == "infinity") {
                lp = loop_around_infinity(f, b);
            } else if (radius.empty()) {
                lp = loop_around(f, b, to_cx(parse_gauss(center)));
            } else {
                lp = Loop{b, to_cx(parse_gauss(center)), to_cx(parse_gauss(radius)).re, false, 0};
                validate_loop(f, lp, singular_parameters(f));
            }
            TrackOptions opt;
            opt.precision = g.precision;
            TrackResult r = track_roots(f, lp, opt);
            json j = perm_json(r.perm);
            j["radius"] = real_str(lp.radius);
            j["max_residual"] = real_str(r.max_residual);
            j["steps"] = r.steps;
            std::string s = "permutation: " + cycle_notation(r.perm) + "\nradius: " + real_str(lp.radius) +
                            "\nsteps: " + std::to_string(r.steps) + "\nmax residual: " + real_str(r.max_residual) + "\n";
            emit(g, j, s);
        };
    });
    auto* all = mono->add_subcommand("all", "loops around every singular value and infinity");
    all->add_option("--family", family, "polynomial in x and y")->required();
    all->add_option("--base", base, "base point")->required();
    all->callback([&] {
        action = [&] {
            RootFamily f = parse_family(family);
            PrecisionGuard guard(g.precision);
            TrackOptions opt;
            opt.precision = g.precision;
            json loops = json::array();
            std::string s;
            Perm total = identity_perm(f.degree());
            for (const auto& l : monodromy_all(f, parse_gauss(base), opt)) {
                std::string c = l.loop.at_infinity ? "inf" : to_string(l.loop.center);
                json j = perm_json(l.result.perm);
                j["center"] = c;
                loops.push_back(j);
                s += c + ": " + cycle_notation(l.result.perm) + "\n";
                total = compose(total, l.result.perm);
            }
            s += "product: " + cycle_notation(total) + "\n";
            emit(g, {{"loops", loops}, {"product", cycle_notation(total)}}, s);
        };
    });
    auto* kod = mono->add_subcommand("kodaira", "power of a monodromy matrix and its Kodaira fibre");
    kod->add_option("--matrix", kmatrix, "entries 'a,b;c,d' over Q(i)")->required();
    kod->add_option("--power", power, "exponent")->check(CLI::NonNegativeNumber);
    kod->callback([&] {
        action = [&] {
            MonodromyMatrix m = power_monodromy(parse_matrix(kmatrix), power);
            std::string fibre = classify_kodaira(m).name();
            emit(g, {{"matrix", to_string(m)}, {"fibre", fibre}}, "matrix: " + to_string(m) + "\nfibre: " + fibre + "\n");
        };
    });

    // reproduce-paper -----------------------------------------------------------------------------
    auto* rep = app.add_subcommand("reproduce-paper", "run the acceptance suite on the bundled fixtures");
    std::string data = TORIC_DATA_DIR;
    std::vector<std::string> only;
    rep->add_option("--data", data, "fixture directory");
    rep->add_option("--only", only, "criterion tag or number (repeatable, comma separated)")->delimiter(',');
    rep->callback([&] {
        action = [&] {
            repro::Fixtures fx(data);
            auto outcomes = repro::run_criteria(fx, only);
            json arr = json::array(), failed = json::array();
            std::string s;
            for (const auto& o : outcomes) {
                arr.push_back(repro::outcome_json(o));
                s += repro::format_outcome(o) + "\n";
                if (!o.pass) failed.push_back(std::to_string(o.id) + " " + o.tag);
            }
            if (failed.empty()) {
                s += "all " + std::to_string(outcomes.size()) + " criteria passed\n";
            } else {
                s += "failed:";
                for (const auto& f : failed) s += " [" + f.get<std::string>() + "]";
                s += "\n";
            }
            emit(g, {{"criteria", arr}, {"failed", failed}}, s);
            if (!failed.empty()) throw Status{1};
        };
    });

    for (auto* c : app.get_subcommands({})) {
        c->fallthrough();
        for (auto* s : c->get_subcommands({})) s->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    auto fail = [&](int rc, const std::string& code, const std::string& message, const std::string& context) {
        std::cerr << json{{"code", code}, {"message", message}, {"context", context}}.dump() << std::endl;
        return rc;
    };
    try {
        if (action) action();
    } catch (const Status& s) {
        return s.code;
    } catch (const Error& e) {
        bool parse = e.code() == "parse_error" || e.code() == "schema" || e.code() == "unknown_criterion";
        return fail(parse ? 1 : 2, e.code(), e.what(), e.context());
    } catch (const json::exception& e) {
        return fail(1, "parse_error", e.what(), in);
    } catch (const std::exception& e) {
        return fail(1, "io_error", e.what(), "");
    }
    return 0;
}
