#include "toric/dd.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace toric {

namespace {

struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(std::size_t i) { w[i / 64] |= std::uint64_t(1) << (i % 64); }
    bool subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }
    Bits operator&(const Bits& o) const {
        Bits r;
        r.w.resize(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] & o.w[i];
        return r;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w) c += static_cast<std::size_t>(__builtin_popcountll(x));
        return c;
    }
};

struct Ray {
    Vec v;
    Bits zero;
};

// Rational inverse columns of a square nonsingular integer matrix, scaled to primitive integer vectors.
std::vector<Vec> inverse_columns(const Mat& a) {
    std::size_t n = a.size();
    std::vector<Vec> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<RatVec> m(n, RatVec(n + 1));
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) m[r][c] = Rat(a[r][c]);
            m[r][n] = (r == i) ? 1 : 0;
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (m[p][c] == 0) ++p;
            std::swap(m[p], m[c]);
            Rat inv = 1 / m[c][c];
            for (auto& y : m[c]) y *= inv;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || m[r][c] == 0) continue;
                Rat f = m[r][c];
                for (std::size_t j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
            }
        }
        Int l = 1;
        for (std::size_t r = 0; r < n; ++r) l = lcm(l, denominator(m[r][n]));
        Vec v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = numerator(Rat(m[r][n] * l));
        out.push_back(primitive(v));
    }
    return out;
}

}  // namespace

std::vector<Vec> extreme_rays(const Mat& ineqs_in, std::size_t dim) {
    Mat rows;
    for (const auto& r : ineqs_in)
        if (!is_zero(r)) rows.push_back(r);
    std::size_t m = rows.size();

    // Greedy choice of dim independent rows.
    std::vector<std::size_t> basis_idx;
    std::vector<RatVec> ech;
    std::vector<std::size_t> ech_piv;
    for (std::size_t i = 0; i < m && basis_idx.size() < dim; ++i) {
        RatVec x(dim);
        for (std::size_t j = 0; j < dim; ++j) x[j] = Rat(rows[i][j]);
        for (std::size_t k = 0; k < ech.size(); ++k) {
            if (x[ech_piv[k]] == 0) continue;
            Rat f = x[ech_piv[k]] / ech[k][ech_piv[k]];
            for (std::size_t j = 0; j < dim; ++j) x[j] -= f * ech[k][j];
        }
        std::size_t p = 0;
        while (p < dim && x[p] == 0) ++p;
        if (p == dim) continue;
        ech.push_back(x);
        ech_piv.push_back(p);
        basis_idx.push_back(i);
    }
    if (basis_idx.size() < dim) throw Error("not_pointed", "inequality system has a lineality space");

    Mat B;
    for (auto i : basis_idx) B.push_back(rows[i]);
    std::vector<Vec> cols = inverse_columns(B);
    std::vector<Ray> rays;
    for (std::size_t i = 0; i < dim; ++i) {
        Ray r{cols[i], Bits(m)};
        for (std::size_t j = 0; j < dim; ++j)
            if (j != i) r.zero.set(basis_idx[j]);
        rays.push_back(std::move(r));
    }

    std::vector<bool> used(m, false);
    for (auto i : basis_idx) used[i] = true;

    for (std::size_t c = 0; c < m; ++c) {
        if (used[c]) continue;
        const Vec& a = rows[c];
        std::vector<Int> s(rays.size());
        std::vector<std::size_t> pos, negs;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            s[k] = dot(a, rays[k].v);
            if (s[k] > 0) pos.push_back(k);
            else if (s[k] < 0) negs.push_back(k);
        }
        if (negs.empty()) {
            for (std::size_t k = 0; k < rays.size(); ++k)
                if (s[k] == 0) rays[k].zero.set(c);
            continue;
        }
        std::vector<Ray> next;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (s[k] >= 0) {
                Ray r = rays[k];
                if (s[k] == 0) r.zero.set(c);
                next.push_back(std::move(r));
            }
        }
        for (auto p : pos) {
            for (auto q : negs) {
                Bits z = rays[p].zero & rays[q].zero;
                if (z.count() + 2 < dim) continue;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
                    if (k == p || k == q) continue;
                    if (z.subset_of(rays[k].zero)) adjacent = false;
                }
                if (!adjacent) continue;
                Vec w = sub(scale(rays[q].v, s[p]), scale(rays[p].v, s[q]));
                Ray r{primitive(w), z};
                r.zero.set(c);
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
        used[c] = true;
    }

    std::set<Vec, VecLess> out;
    for (auto& r : rays) out.insert(r.v);
    return {out.begin(), out.end()};
}

}  // namespace toric
