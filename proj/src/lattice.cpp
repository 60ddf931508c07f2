#include "toric/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

namespace {

void ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    Int old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s1; old_s = s1; s1 = tmp;
        tmp = old_t - q * t1; old_t = t1; t1 = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    g = old_r; s = old_s; t = old_t;
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

}  // namespace

Vec make_vec(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Mat make_mat(std::initializer_list<std::initializer_list<long>> rows) {
    Mat m;
    for (auto r : rows) m.push_back(make_vec(r));
    return m;
}

Int dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("dimension", "pairing of vectors of different rank");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(const Vec& a, const Int& k) {
    Vec r(a);
    for (auto& x : r) x *= k;
    return r;
}

Vec neg(const Vec& a) { return scale(a, Int(-1)); }

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

Int content(const Vec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return abs(g);
}

Vec primitive(const Vec& v) {
    Int g = content(v);
    if (g == 0) throw Error("zero_vector", "no primitive generator");
    Vec r(v);
    for (auto& x : r) x /= g;
    return r;
}

Vec mul(const Vec& v, const Mat& m) {
    if (v.size() != m.size()) throw Error("dimension", "vector/matrix size mismatch");
    std::size_t n = m.empty() ? 0 : m.front().size();
    Vec r(n, Int(0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) r[j] += v[i] * m[i][j];
    }
    return r;
}

Mat mul(const Mat& a, const Mat& b) {
    Mat r;
    r.reserve(a.size());
    for (const auto& row : a) r.push_back(mul(row, b));
    return r;
}

Mat transpose(const Mat& m, std::size_t ncols) {
    Mat t(ncols, Vec(m.size(), Int(0)));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) t[j][i] = m[i][j];
    return t;
}

Mat identity(std::size_t n) {
    Mat m(n, Vec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Int det(const Mat& m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    Mat a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::size_t rank(const Mat& m) {
    if (m.empty()) return 0;
    Mat H = hermite_form(m).H;
    return static_cast<std::size_t>(std::count_if(H.begin(), H.end(), [](const Vec& r) { return !is_zero(r); }));
}

HermiteResult hermite_form(const Mat& m, std::size_t ncols) {
    std::size_t nrows = m.size();
    Mat H = m, U = identity(nrows);
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
        for (std::size_t i = r + 1; i < nrows; ++i) {
            if (H[i][col] == 0) continue;
            if (H[r][col] == 0) {
                std::swap(H[r], H[i]);
                std::swap(U[r], U[i]);
                continue;
            }
            Int a = H[r][col], b = H[i][col], g, s, t;
            ext_gcd(a, b, g, s, t);
            Int ag = a / g, bg = b / g;
            for (Mat* X : {&H, &U}) {
                Vec& rr = (*X)[r];
                Vec& ri = (*X)[i];
                for (std::size_t j = 0; j < rr.size(); ++j) {
                    Int x = rr[j], y = ri[j];
                    rr[j] = s * x + t * y;
                    ri[j] = ag * y - bg * x;
                }
            }
        }
        if (H[r][col] == 0) continue;
        if (H[r][col] < 0) {
            for (auto& x : H[r]) x = -x;
            for (auto& x : U[r]) x = -x;
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(H[i][col], H[r][col]);
            if (q == 0) continue;
            for (std::size_t j = 0; j < ncols; ++j) H[i][j] -= q * H[r][j];
            for (std::size_t j = 0; j < nrows; ++j) U[i][j] -= q * U[r][j];
        }
        ++r;
    }
    return {H, U};
}

Mat kernel_basis(const Mat& points, std::size_t ncols) {
    auto [H, U] = hermite_form(points, ncols);
    Mat K;
    for (std::size_t i = 0; i < H.size(); ++i)
        if (is_zero(H[i])) K.push_back(U[i]);
    if (K.empty()) return K;
    Mat E = hermite_form(K, points.size()).H;
    Mat out;
    for (auto& row : E)
        if (!is_zero(row)) out.push_back(row);
    return out;
}

Mat right_kernel(const Mat& m, std::size_t ncols) {
    return kernel_basis(transpose(m, ncols), m.size());
}

Sublattice saturation(const Mat& rows, std::size_t ncols) {
    Sublattice L;
    L.ambient_rank = ncols;
    Mat K = right_kernel(rows, ncols);
    if (K.empty()) {
        L.basis = identity(ncols);
        return L;
    }
    L.basis = kernel_basis(transpose(K, ncols), K.size());
    return L;
}

bool solve_row(const Mat& basis, const Vec& v, RatVec& x) {
    std::size_t k = basis.size(), n = v.size();
    // Augmented system: columns are basis rows, rhs v.
    std::vector<RatVec> a(n, RatVec(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = Rat(basis[j][i]);
        a[i][k] = Rat(v[i]);
    }
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < n; ++c) {
        std::size_t p = r;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(a[p], a[r]);
        Rat inv = 1 / a[r][c];
        for (auto& y : a[r]) y *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = c; j <= k; ++j) a[i][j] -= f * a[r][j];
        }
        pivcol.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < n; ++i)
        if (a[i][k] != 0) return false;
    x.assign(k, Rat(0));
    for (std::size_t i = 0; i < r; ++i) x[pivcol[i]] = a[i][k];
    return true;
}

Mat right_inverse(const Mat& basis, std::size_t ncols) {
    std::size_t k = basis.size();
    auto [H, U] = hermite_form(transpose(basis, ncols), k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (H[i][j] != (i == j ? 1 : 0)) throw Error("not_saturated", "basis is not saturated");
    Mat top(U.begin(), U.begin() + static_cast<long>(k));
    return transpose(top, ncols);
}

bool Sublattice::contains(const Vec& v) const {
    RatVec x;
    if (!solve_row(basis, v, x)) return false;
    return std::all_of(x.begin(), x.end(), [](const Rat& q) { return denominator(q) == 1; });
}

Vec Sublattice::coordinates(const Vec& v) const {
    RatVec x;
    if (!solve_row(basis, v, x)) throw Error("not_in_sublattice", "vector outside the sublattice", to_string(v));
    Vec out;
    for (const auto& q : x) {
        if (denominator(q) != 1) throw Error("not_in_sublattice", "vector outside the sublattice", to_string(v));
        out.push_back(numerator(q));
    }
    return out;
}

Vec Sublattice::ambient(const Vec& coords) const { return mul(coords, basis); }

std::string to_string(const Vec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::string to_string(const Mat& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.size(); ++i) {
        os << (i ? "," : "") << '[';
        for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? "," : "") << m[i][j];
        os << ']';
    }
    os << ']';
    return os.str();
}

bool VecLess::operator()(const Vec& a, const Vec& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace toric
