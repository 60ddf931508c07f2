#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>

#include "toric/fan.hpp"

namespace toric {

namespace {

using I64 = long long;
using I128 = __int128;
using V64 = std::vector<I64>;

I64 gcd64(I64 a, I64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

V64 to64(const Vec& v) {
    V64 out;
    for (const auto& x : v) {
        if (abs(x) > (Int(1) << 20)) throw Error("overflow", "coordinates too large for the fibration search", to_string(v));
        out.push_back(x.convert_to<I64>());
    }
    return out;
}

constexpr std::size_t kMaxRank = 8;
using Row = std::array<I128, kMaxRank + 1>;

// Solve W x = -det * 1 by fraction-free elimination; returns det (0 if singular), x scaled by det.
I128 solve_minus_ones(std::array<Row, kMaxRank> a, std::size_t k, Row& x) {
    for (std::size_t r = 0; r < k; ++r) a[r][k] = -1;
    I128 prev = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && a[p][c] == 0) ++p;
        if (p == k) return 0;
        if (p != c) std::swap(a[p], a[c]);
        for (std::size_t r = c + 1; r < k; ++r) {
            for (std::size_t j = c + 1; j <= k; ++j) a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) / prev;
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    I128 det = a[k - 1][k - 1];
    for (std::size_t i = k; i-- > 0;) {
        I128 t = a[i][k] * det;
        for (std::size_t j = i + 1; j < k; ++j) t -= a[i][j] * x[j];
        x[i] = t / a[i][i];
    }
    return det;
}

// Is the real slice of the polar by span(basis) a lattice polytope? Its vertices are solved
// from k-subsets of the projected vertices of delta.
bool slice_is_lattice(const std::vector<const V64*>& basis, const std::vector<V64>& mverts) {
    std::size_t k = basis.size(), n = basis.front()->size();
    std::vector<Row> w;
    for (const auto& m : mverts) {
        Row row{};
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) row[i] += I128(m[j]) * (*basis[i])[j];
        if (std::find(w.begin(), w.end(), row) == w.end()) w.push_back(row);
    }
    std::size_t N = w.size();
    if (N < k + 1) return false;
    std::array<std::size_t, kMaxRank> idx{};
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    Row x{};
    std::array<Row, kMaxRank> a{};
    while (true) {
        for (std::size_t i = 0; i < k; ++i) a[i] = w[idx[i]];
        I128 det = solve_minus_ones(a, k, x);
        if (det != 0) {
            if (det < 0) {
                det = -det;
                for (std::size_t i = 0; i < k; ++i) x[i] = -x[i];
            }
            bool feasible = true;
            for (const auto& row : w) {
                I128 t = 0;
                for (std::size_t i = 0; i < k; ++i) t += row[i] * x[i];
                if (t < -det) { feasible = false; break; }
            }
            if (feasible)
                for (std::size_t j = 0; j < n; ++j) {
                    I128 t = 0;
                    for (std::size_t i = 0; i < k; ++i) t += x[i] * (*basis[i])[j];
                    if (t % det != 0) return false;
                }
        }
        std::size_t p = k;
        while (p > 0 && idx[p - 1] == N - k + p - 1) --p;
        if (p == 0) return true;
        ++idx[p - 1];
        for (std::size_t q = p; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
}

struct Search {
    std::size_t n, k;
    std::vector<V64> pts;
    std::vector<Vec> pts_big;
    std::vector<V64> mverts;
    const LatticePolytope* delta;
    std::vector<FibrationCandidate> out;

    void emit(const std::vector<int>& basis, const std::vector<int>& members) {
        if (members.size() < k + 1) return;
        // each facet of a lattice slice carries at least k of the member points
        std::size_t facets = 0;
        for (const auto& m : mverts) {
            std::size_t tight = 0;
            for (int i : members) {
                I64 t = 0;
                for (std::size_t j = 0; j < n; ++j) t += m[j] * pts[static_cast<std::size_t>(i)][j];
                tight += t == -1;
            }
            facets += tight >= k;
        }
        if (facets < k + 1) return;
        std::vector<const V64*> b;
        for (int i : basis) b.push_back(&pts[static_cast<std::size_t>(i)]);
        if (!slice_is_lattice(b, mverts)) return;
        std::vector<Vec> sp;
        for (int i : members) sp.push_back(pts_big[static_cast<std::size_t>(i)]);
        sp.push_back(Vec(n, Int(0)));
        FibrationCandidate c;
        c.slice = hull_in_span(sp, n);
        c.subspace = c.slice.lattice;
        std::vector<Vec> proj;
        for (const auto& m : delta->vertices()) {
            Vec y;
            for (const auto& bv : c.subspace.basis) y.push_back(dot(m, bv));
            proj.push_back(y);
        }
        c.projection = LatticePolytope::hull(proj);
        if (!is_reflexive(c.slice.poly) || !is_reflexive(c.projection)) return;
        out.push_back(std::move(c));
    }

    void extend(const std::vector<int>& basis, const std::vector<int>& members) {
        std::size_t r = basis.size();
        Mat Q;
        if (r == 0) {
            Q = identity(n);
        } else {
            Mat B;
            for (int i : basis) B.push_back(pts_big[static_cast<std::size_t>(i)]);
            Q = right_kernel(B, n);
        }
        std::vector<V64> q;
        for (const auto& c : Q) q.push_back(to64(c));
        std::size_t d = q.size();
        std::vector<char> in(pts.size(), 0);
        for (int i : members) in[static_cast<std::size_t>(i)] = 1;
        // quotient direction (up to sign) of every point outside the current span
        struct Entry {
            std::uint64_t hash;
            std::array<I64, kMaxRank> key;
            int id;
        };
        std::vector<Entry> es;
        es.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (in[i]) continue;
            Entry e{0, {}, static_cast<int>(i)};
            I64 g = 0;
            for (std::size_t c = 0; c < d; ++c) {
                I64 t = 0;
                for (std::size_t j = 0; j < n; ++j) t += q[c][j] * pts[i][j];
                e.key[c] = t;
                g = gcd64(g, t);
            }
            if (g == 0) continue;
            I64 sign = 0;
            for (std::size_t c = 0; c < d && sign == 0; ++c) sign = e.key[c] < 0 ? -1 : (e.key[c] > 0 ? 1 : 0);
            for (std::size_t c = 0; c < d; ++c) {
                e.key[c] = e.key[c] / g * sign;
                e.hash = (e.hash ^ static_cast<std::uint64_t>(e.key[c])) * 0x100000001b3ULL;
            }
            es.push_back(e);
        }
        std::sort(es.begin(), es.end(), [](const Entry& a, const Entry& b) {
            if (a.hash != b.hash) return a.hash < b.hash;
            if (a.key != b.key) return a.key < b.key;
            return a.id < b.id;
        });
        int last = basis.empty() ? -1 : basis.back();
        for (std::size_t b = 0; b < es.size();) {
            std::size_t e = b + 1;
            while (e < es.size() && es[e].hash == es[b].hash && es[e].key == es[b].key) ++e;
            int first = es[b].id;
            if (first > last && (r + 1 < k || members.size() + (e - b) >= k + 1)) {
                std::vector<int> nb = basis, nm = members;
                nb.push_back(first);
                for (std::size_t t = b; t < e; ++t) nm.push_back(es[t].id);
                std::sort(nm.begin(), nm.end());
                if (r + 1 == k) emit(nb, nm);
                else extend(nb, nm);
            }
            b = e;
        }
    }
};

}  // namespace

namespace {

std::vector<FibrationCandidate> reflexive_slices(const LatticePolytope& delta, const LatticePolytope& dual,
                                                 std::size_t fibre_dim) {
    std::size_t n = delta.rank();
    Search s{n, fibre_dim, {}, {}, {}, &delta, {}};
    // slice vertices lie where the span meets faces of dimension <= n - fibre_dim transversally
    for (const auto& p : dual.boundary_points()) {
        std::vector<Vec> normals;
        for (int f : dual.tight_facets(p)) normals.push_back(dual.facets()[static_cast<std::size_t>(f)].normal);
        if (n - rank(normals) > n - fibre_dim) continue;
        s.pts.push_back(to64(p));
        s.pts_big.push_back(p);
    }
    for (const auto& m : delta.vertices()) s.mverts.push_back(to64(m));
    s.extend({}, {});
    std::sort(s.out.begin(), s.out.end(), [](const FibrationCandidate& a, const FibrationCandidate& b) {
        return std::lexicographical_compare(a.subspace.basis.begin(), a.subspace.basis.end(), b.subspace.basis.begin(),
                                            b.subspace.basis.end(), [](const Vec& x, const Vec& y) { return VecLess()(x, y); });
    });
    return s.out;
}

}  // namespace

std::vector<FibrationCandidate> search_fibrations(const LatticePolytope& delta, std::size_t fibre_dim) {
    if (!is_reflexive(delta)) throw Error("not_reflexive", "fibration search requires a reflexive polytope");
    std::size_t n = delta.rank();
    if (fibre_dim == 0 || fibre_dim >= n) throw Error("dimension", "fibre dimension must lie strictly between 0 and the rank");
    if (n > kMaxRank) throw Error("dimension", "fibration search supports ranks up to 8");
    LatticePolytope dual = polar(delta);
    auto out = reflexive_slices(delta, dual, fibre_dim);
    // balanced: the projection of delta also occurs as a slice of delta itself
    auto mirror = reflexive_slices(dual, delta, fibre_dim);
    for (auto& c : out)
        c.balanced = std::any_of(mirror.begin(), mirror.end(),
                                 [&](const FibrationCandidate& d) { return lattice_equivalent(c.projection, d.slice.poly); });
    return out;
}

bool lattice_equivalent(const LatticePolytope& a, const LatticePolytope& b) {
    std::size_t k = a.rank();
    if (k != b.rank() || a.vertices().size() != b.vertices().size() || a.points().size() != b.points().size() ||
        a.facets().size() != b.facets().size())
        return false;
    if (k == 0) return true;
    const auto& av = a.vertices();
    const auto& bv = b.vertices();
    std::vector<Vec> sorted_b = bv;
    std::sort(sorted_b.begin(), sorted_b.end(), VecLess());
    // affine maps: a0 -> b_t, then a linear part fixed by k independent edges from a0
    Vec a0 = av.front();
    Mat A;
    for (std::size_t i = 1; i < av.size() && A.size() < k; ++i) {
        Mat trial = A;
        trial.push_back(sub(av[i], a0));
        if (rank(trial) == trial.size()) { A = trial; }
    }
    std::size_t m = bv.size();
    for (std::size_t t = 0; t < m; ++t) {
        const Vec& b0 = bv[t];
        std::vector<std::size_t> sel(k, 0);
        while (true) {
            bool distinct = true;
            for (std::size_t i = 0; i < k && distinct; ++i) {
                if (sel[i] == t) distinct = false;
                for (std::size_t j = 0; j < i && distinct; ++j)
                    if (sel[i] == sel[j]) distinct = false;
            }
            if (distinct) {
                Mat Bm;
                for (auto s : sel) Bm.push_back(sub(bv[s], b0));
                if (abs(det(Bm)) == abs(det(A))) {
                    // G with A G = Bm, solved column by column
                    Mat At = transpose(A, k);
                    Mat G(k, Vec(k, Int(0)));
                    bool ok = true;
                    for (std::size_t c = 0; c < k && ok; ++c) {
                        Vec col(k);
                        for (std::size_t r = 0; r < k; ++r) col[r] = Bm[r][c];
                        RatVec x;
                        // A * g = col  <=>  g^T * A^T = col^T
                        if (!solve_row(At, col, x)) { ok = false; break; }
                        for (std::size_t r = 0; r < k; ++r) {
                            if (denominator(x[r]) != 1) { ok = false; break; }
                            G[r][c] = numerator(x[r]);
                        }
                    }
                    if (ok && abs(det(G)) == 1) {
                        std::vector<Vec> img;
                        for (const auto& v : av) img.push_back(add(mul(sub(v, a0), G), b0));
                        std::sort(img.begin(), img.end(), VecLess());
                        if (img == sorted_b) return true;
                    }
                }
            }
            std::size_t p = 0;
            while (p < k && ++sel[p] == m) sel[p++] = 0;
            if (p == k) break;
        }
    }
    return false;
}

}  // namespace toric
