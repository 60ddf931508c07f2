#include "toric/k3.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "toric/error.hpp"

namespace toric {

namespace {

const ParamScalar kTwelve6(Rat(2985984));

ParamScalar require_nonzero(const ParamScalar& x, const char* what) {
    if (x.is_zero()) throw Error("division_by_zero", std::string(what) + " vanishes");
    return x;
}

ParamScalar power(const ParamScalar& x, int e) {
    ParamScalar r(1);
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

bool as_rational(const ParamScalar& x, Rat& q) {
    if (!x.num().is_constant() || !x.den().is_constant()) return false;
    q = x.num().constant_term() / x.den().constant_term();
    return true;
}

}  // namespace

bool rational_sqrt(const Rat& q, Rat& root) {
    if (q < 0) return false;
    Int n = numerator(q), d = denominator(q);
    Int rn = sqrt(n), rd = sqrt(d);
    if (rn * rn != n || rd * rd != d) return false;
    root = Rat(rn, rd);
    return true;
}

LambdaNormalForm normal_form_from_lambda(const std::array<ParamScalar, 6>& l) {
    require_nonzero(l[5], "lambda5^6 (denominator of Lambda0)");
    require_nonzero(l[4], "lambda4^2 (denominator of Lambda1)");
    LambdaNormalForm out;
    out.Lambda0 = power(l[2], 3) * power(l[3], 2) * l[4] / power(l[5], 6);
    out.Lambda1 = l[0] * l[1] / power(l[4], 2);
    ParamScalar den = kTwelve6 * power(out.Lambda0, 2) * out.Lambda1;
    require_nonzero(den, "12^6 Lambda0^2 Lambda1");
    ParamScalar b = ParamScalar(864) * out.Lambda0 - ParamScalar(1);
    out.nf = {ParamScalar(1) / den, b * b / den, ParamScalar(1)};
    return out;
}

ModuliPoint pi_sigma(const K3NormalForm& nf) {
    require_nonzero(nf.d, "d");
    return {nf.a3 / nf.d, (nf.a3 - nf.b2 + nf.d) / nf.d};
}

ModuliPoint fibre_params_Y(const ParamScalar& u, const ParamScalar& v, const ParamScalar& xi0, const ParamScalar& xi1) {
    require_nonzero(xi0, "xi0");
    ParamScalar w = require_nonzero(u + v, "u + v");
    ParamScalar r = u * v / (w * w);
    ParamScalar pi = r / (kTwelve6 * xi0);
    ParamScalar sigma = ParamScalar(1) + (xi1 - ParamScalar(432) * xi1 * xi1) / (ParamScalar(1728) * xi0) * r;
    return {pi, sigma};
}

ModuliPoint fibre_params_Z(const ParamScalar& s, const ParamScalar& t, const ParamScalar& B, const ParamScalar& psi0,
                           const ParamScalar& psi1, const ParamScalar& psi_s) {
    ParamScalar q = require_nonzero(B * s * s - ParamScalar(2) * psi_s * s * t + B * t * t, "B s^2 - 2 psi_s s t + B t^2");
    ParamScalar r = s * t / q;
    ParamScalar pi = power(psi0, 12) / ParamScalar(2) * r;
    ParamScalar sigma = ParamScalar(1) - ParamScalar(2) * (power(psi0, 6) * psi1 + psi1 * psi1) * r;
    return {pi, sigma};
}

YParams match_parameters(const ParamScalar& B, const ParamScalar& psi0, const ParamScalar& psi1) {
    require_nonzero(psi0, "psi0");
    ParamScalar c = ParamScalar(12) * psi0 * psi0;
    return {ParamScalar(2) * B / power(c, 6), -ParamScalar(4) * psi1 / power(c, 3)};
}

JRoots j_invariants(const ModuliPoint& mp) {
    JRoots out;
    out.discriminant = mp.sigma * mp.sigma - ParamScalar(4) * mp.pi;
    ParamScalar half(Rat(1, 2));
    Rat q, root;
    ParamScalar r;
    if (as_rational(out.discriminant, q) && rational_sqrt(q, root)) {
        out.rational = as_rational(mp.sigma, q);
        r = ParamScalar(root);
    } else {
        r = ParamScalar::sqrt(out.discriminant);
    }
    out.j1 = (mp.sigma + r) * half;
    out.j2 = (mp.sigma - r) * half;
    return out;
}

FibreLocus singular_fibre_locus(const ParamScalar& xi0) {
    ParamScalar x = kTwelve6 * require_nonzero(xi0, "xi0");
    ParamScalar disc = ParamScalar(1) - x;
    FibreLocus out;
    Rat q, root;
    ParamScalar r;
    if (as_rational(disc, q) && rational_sqrt(q, root)) {
        r = ParamScalar(root);
        out.rational = true;
    } else {
        r = ParamScalar::sqrt(disc);
    }
    ParamScalar base = ParamScalar(2) - x;
    out.alpha = (base + ParamScalar(2) * r) / x;
    out.beta = (base - ParamScalar(2) * r) / x;
    return out;
}

std::vector<AdeComponent> ade_subgraph(const LatticePolytope& p, const Vec& d) {
    SkeletonGraph g = skeleton(p);
    std::size_t n = g.nodes.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
    std::vector<bool> kept(n, false);
    for (auto [a, b] : g.edges) {
        Int pa = dot(g.nodes[static_cast<std::size_t>(a)], d), pb = dot(g.nodes[static_cast<std::size_t>(b)], d);
        if (pa * pb > 0) {
            parent[static_cast<std::size_t>(find(a))] = find(b);
            kept[static_cast<std::size_t>(a)] = kept[static_cast<std::size_t>(b)] = true;
        }
    }
    std::map<int, AdeComponent> comps;
    for (std::size_t i = 0; i < n; ++i) {
        if (!kept[i]) continue;
        AdeComponent& c = comps[find(static_cast<int>(i))];
        c.nodes.push_back(g.nodes[i]);
        c.sign = dot(g.nodes[i], d) > 0 ? 1 : -1;
    }
    std::vector<AdeComponent> out;
    for (auto& [k, c] : comps) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(), [](const AdeComponent& a, const AdeComponent& b) {
        if (a.nodes.size() != b.nodes.size()) return a.nodes.size() > b.nodes.size();
        return VecLess()(a.nodes.front(), b.nodes.front());
    });
    return out;
}

}  // namespace toric
