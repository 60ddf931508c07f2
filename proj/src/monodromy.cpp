#include "toric/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "toric/error.hpp"

namespace toric {

namespace {

std::recursive_mutex& precision_mutex() {
    static std::recursive_mutex m;
    return m;
}

const double kMargin = 0.1;

Real to_real(const Rat& q) {
    return Real(numerator(q)) / Real(denominator(q));
}

Cx cx(const Real& re, const Real& im = 0) { return {re, im}; }

Cx horner(const std::vector<Cx>& c, const Cx& z) {
    Cx acc = cx(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Cx horner(const UPoly& p, const Cx& z) {
    Cx acc = cx(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + to_cx(*it);
    return acc;
}

Cx expi(const Real& t) { return {cos(t), sin(t)}; }

unsigned current_bits() {
    return static_cast<unsigned>(std::ceil(Real::default_precision() / 0.30102999566398120));
}

Real epsilon_bits(int below) {
    return ldexp(Real(1), -static_cast<int>(current_bits()) + below);
}

Real dist_point_segment(const Cx& p, const Cx& a, const Cx& b) {
    Cx d = b - a;
    Real len2 = d.re * d.re + d.im * d.im;
    if (len2 == 0) return abs(p - a);
    Real t = ((p.re - a.re) * d.re + (p.im - a.im) * d.im) / len2;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    return abs(p - (a + t * d));
}

GaussRat scalar_to_gauss(const ParamScalar& s) {
    if (!s.den().is_constant()) throw Error("family_coefficient", "coefficient has a symbolic denominator", s.to_string());
    Rat den = s.den().constant_term();
    GaussRat out;
    for (const auto& [mono, c] : s.num().terms()) {
        int e = 0;
        for (const auto& [sym, k] : mono) {
            if (sym != "I") throw Error("family_coefficient", "unexpected symbol in coefficient", sym);
            e += k;
        }
        static const GaussRat units[4] = {GaussRat(1), GaussRat(0, 1), GaussRat(-1), GaussRat(0, -1)};
        out = out + units[e % 4] * GaussRat(c / den);
    }
    return out;
}

std::string imaginary_to_I(const std::string& text) {
    std::string out;
    for (std::size_t k = 0; k < text.size(); ++k) {
        char c = text[k];
        bool word_before = k > 0 && (std::isalnum(static_cast<unsigned char>(text[k - 1])) || text[k - 1] == '_');
        bool word_after = k + 1 < text.size() && (std::isalnum(static_cast<unsigned char>(text[k + 1])) || text[k + 1] == '_');
        if ((c == 'i' || c == 'I') && !word_after) {
            bool digit_before = k > 0 && (std::isdigit(static_cast<unsigned char>(text[k - 1])) || text[k - 1] == ')');
            if (digit_before) {
                out += "*I";
                continue;
            }
            if (!word_before) {
                out += 'I';
                continue;
            }
        }
        out += c;
    }
    return out;
}

// Roots of the polynomial with complex coefficients c (index = degree).
std::vector<Cx> roots_cx(std::vector<Cx> c) {
    while (!c.empty() && c.back().re == 0 && c.back().im == 0) c.pop_back();
    int d = static_cast<int>(c.size()) - 1;
    if (d <= 0) return {};
    Cx lead = c.back();
    for (auto& a : c) a = a / lead;
    std::vector<Cx> dc;
    for (int k = 1; k <= d; ++k) dc.push_back(Real(k) * c[k]);

    Real bound = 0;
    for (int k = 1; k <= d; ++k) {
        Real a = abs(c[d - k]);
        if (a != 0) bound = std::max(bound, Real(pow(a, Real(1) / k)));
    }
    bound = 2 * bound;
    if (bound == 0) bound = 1;

    std::vector<Cx> z(d);
    Real two_pi = 2 * boost::math::constants::pi<Real>();
    for (int k = 0; k < d; ++k) z[k] = Real(bound) * expi(two_pi * k / d + Real(0.4));

    Real eps = epsilon_bits(8);
    for (int iter = 0; iter < 2000; ++iter) {
        Real worst = 0;
        for (int k = 0; k < d; ++k) {
            Cx pv = horner(c, z[k]);
            Cx dv = horner(dc, z[k]);
            if (pv.re == 0 && pv.im == 0) continue;
            Cx w = pv / dv;
            Cx s = cx(0);
            for (int j = 0; j < d; ++j)
                if (j != k) s = s + cx(1) / (z[k] - z[j]);
            Cx step = w / (cx(1) - w * s);
            z[k] = z[k] - step;
            Real scale = std::max(Real(1), Real(abs(z[k])));
            worst = std::max(worst, Real(abs(step) / scale));
        }
        if (worst < eps) break;
    }
    for (auto& r : z) {
        for (int it = 0; it < 5; ++it) {
            Cx dv = horner(dc, r);
            if (dv.re == 0 && dv.im == 0) break;
            r = r - horner(c, r) / dv;
        }
    }
    return z;
}

bool cx_less(const Cx& a, const Cx& b, const Real& tol) {
    if (abs(Real(a.re - b.re)) > tol) return a.re < b.re;
    return a.im < b.im;
}

std::vector<Cx> coefficients_at(const RootFamily& f, const Cx& x) {
    std::vector<Cx> c;
    c.reserve(f.coeffs.size());
    for (const auto& p : f.coeffs) c.push_back(horner(p, x));
    return c;
}

Real min_pairwise(const std::vector<Cx>& r) {
    Real m = -1;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) {
            Real d = abs(r[i] - r[j]);
            if (m < 0 || d < m) m = d;
        }
    return m < 0 ? Real(1) : m;
}

// Path pieces: segment base->start, circle, segment start->base.
struct Path {
    Cx base, start, center;
    Real radius, theta0;
    int orientation = 1;

    Cx at(int piece, const Real& t) const {
        if (piece == 0) return base + t * (start - base);
        if (piece == 2) return start + t * (base - start);
        Real two_pi = 2 * boost::math::constants::pi<Real>();
        return center + radius * expi(theta0 + orientation * two_pi * t);
    }
};

Path make_path(const Loop& loop) {
    Path p;
    p.base = to_cx(loop.base);
    p.radius = loop.radius;
    if (loop.at_infinity) {
        p.center = cx(0);
        p.orientation = -1;
        Cx u = expi(loop.exit_angle);
        Real bu = p.base.re * u.re + p.base.im * u.im;
        Real b2 = p.base.re * p.base.re + p.base.im * p.base.im;
        Real s = -bu + sqrt(bu * bu - b2 + p.radius * p.radius);
        p.start = p.base + s * u;
        p.theta0 = atan2(p.start.im, p.start.re);
        return p;
    }
    p.center = loop.center;
    Cx d = p.base - p.center;
    Real len = abs(d);
    if (len == 0) {
        d = cx(1);
        len = 1;
    }
    p.start = p.center + (p.radius / len) * d;
    p.theta0 = atan2(d.im, d.re);
    return p;
}

}  // namespace

PrecisionGuard::PrecisionGuard(unsigned bits) {
    precision_mutex().lock();
    saved_ = Real::default_precision();
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)));
}

PrecisionGuard::~PrecisionGuard() {
    Real::default_precision(saved_);
    precision_mutex().unlock();
}

GaussRat GaussRat::operator/(const GaussRat& o) const {
    if (o.is_zero()) throw Error("division_by_zero", "division by zero");
    Rat n = o.norm();
    GaussRat p = *this * o.conj();
    return {p.re / n, p.im / n};
}

std::string GaussRat::to_string() const {
    std::ostringstream os;
    if (im == 0) {
        os << re;
        return os.str();
    }
    if (re != 0) os << re << (im > 0 ? "+" : "-");
    else if (im < 0) os << "-";
    Rat a = im < 0 ? Rat(-im) : im;
    if (a != 1) os << a << "*";
    os << "i";
    return os.str();
}

GaussRat parse_gauss(const std::string& text) {
    return scalar_to_gauss(parse_scalar(imaginary_to_I(text)));
}

Cx to_cx(const GaussRat& z) { return {to_real(z.re), to_real(z.im)}; }

Real abs(const Cx& z) { return hypot(z.re, z.im); }

std::string to_string(const Cx& z, int digits) {
    std::ostringstream os;
    os << z.re.str(digits, std::ios_base::scientific) << (z.im < 0 ? "-" : "+")
       << Real(boost::multiprecision::abs(z.im)).str(digits, std::ios_base::scientific) << "i";
    return os.str();
}

UPoly trim(UPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

UPoly add(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (k < a.size()) r[k] = r[k] + a[k];
        if (k < b.size()) r[k] = r[k] + b[k];
    }
    return trim(std::move(r));
}

UPoly sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (k < a.size()) r[k] = r[k] + a[k];
        if (k < b.size()) r[k] = r[k] - b[k];
    }
    return trim(std::move(r));
}

UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return trim(std::move(r));
}

UPoly derivative(const UPoly& p) {
    UPoly r;
    for (std::size_t k = 1; k < p.size(); ++k) r.push_back(p[k] * GaussRat(static_cast<long>(k)));
    return trim(std::move(r));
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    UPoly bb = trim(b);
    if (bb.empty()) throw Error("division_by_zero", "polynomial division by zero");
    r = trim(a);
    q.assign(r.size() >= bb.size() ? r.size() - bb.size() + 1 : 0, GaussRat());
    while (!r.empty() && r.size() >= bb.size()) {
        std::size_t shift = r.size() - bb.size();
        GaussRat c = r.back() / bb.back();
        q[shift] = c;
        for (std::size_t k = 0; k < bb.size(); ++k) r[shift + k] = r[shift + k] - c * bb[k];
        r.pop_back();
        r = trim(std::move(r));
    }
    q = trim(std::move(q));
}

UPoly gcd(UPoly a, UPoly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        UPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    GaussRat lc = a.back();
    for (auto& c : a) c = c / lc;
    return a;
}

std::string to_string(const UPoly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::string out;
    for (std::size_t k = p.size(); k-- > 0;) {
        if (p[k].is_zero()) continue;
        std::string c = p[k].to_string();
        bool compound = p[k].re != 0 && p[k].im != 0;
        if (compound) c = "(" + c + ")";
        if (!out.empty()) {
            if (c[0] == '-') {
                out += " - ";
                c = c.substr(1);
            } else {
                out += " + ";
            }
        }
        if (k == 0) {
            out += c;
            continue;
        }
        if (c != "1") out += (c == "-1" ? "-" : c + "*");
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

std::vector<Cx> polynomial_roots(const UPoly& p) {
    std::vector<Cx> c;
    for (const auto& a : p) c.push_back(to_cx(a));
    return roots_cx(std::move(c));
}

RootFamily make_family(std::vector<UPoly> coeffs) {
    for (auto& c : coeffs) c = trim(std::move(c));
    while (!coeffs.empty() && coeffs.back().empty()) coeffs.pop_back();
    if (coeffs.size() < 2) throw Error("degenerate_family", "family has degree < 1 in y");
    return RootFamily{std::move(coeffs)};
}

RootFamily parse_family(const std::string& text) {
    SparsePoly f = parse_poly(imaginary_to_I(text), {"x", "y"});
    int n = std::max(f.degree("y"), 0);
    std::vector<UPoly> coeffs(n + 1);
    for (const auto& [e, c] : f.terms()) {
        UPoly& slot = coeffs[e[1]];
        if (static_cast<int>(slot.size()) <= e[0]) slot.resize(e[0] + 1);
        slot[e[0]] = slot[e[0]] + scalar_to_gauss(c);
    }
    return make_family(std::move(coeffs));
}

UPoly discriminant(const RootFamily& f) {
    int n = f.degree();
    std::vector<UPoly> df;
    for (int k = 1; k <= n; ++k) df.push_back(mul(f.coeffs[k], UPoly{GaussRat(k)}));
    if (n == 1) return UPoly{GaussRat(1)};
    // Sylvester matrix of f and f_y (size 2n-1), determinant by fraction-free elimination.
    int m = 2 * n - 1;
    std::vector<std::vector<UPoly>> a(m, std::vector<UPoly>(m));
    for (int r = 0; r < n - 1; ++r)
        for (int k = 0; k <= n; ++k) a[r][r + (n - k)] = f.coeffs[k];
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= n - 1; ++k) a[n - 1 + r][r + (n - 1 - k)] = df[k];
    UPoly prev{GaussRat(1)};
    int sign = 1;
    for (int k = 0; k < m - 1; ++k) {
        if (a[k][k].empty()) {
            int piv = -1;
            for (int r = k + 1; r < m; ++r)
                if (!a[r][k].empty()) {
                    piv = r;
                    break;
                }
            if (piv < 0) return {};
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < m; ++i) {
            for (int j = k + 1; j < m; ++j) {
                UPoly num = sub(mul(a[k][k], a[i][j]), mul(a[i][k], a[k][j]));
                UPoly q, r;
                divmod(num, prev, q, r);
                a[i][j] = q;
            }
            a[i][k].clear();
        }
        prev = a[k][k];
    }
    UPoly res = a[m - 1][m - 1];
    if (sign < 0) res = mul(res, UPoly{GaussRat(-1)});
    // disc = (-1)^(n(n-1)/2) * res / lc
    if ((n * (n - 1) / 2) % 2) res = mul(res, UPoly{GaussRat(-1)});
    UPoly q, r;
    divmod(res, f.leading(), q, r);
    return r.empty() ? q : res;
}

std::vector<SingularValue> singular_parameters(const RootFamily& f) {
    UPoly d = discriminant(f);
    if (d.empty()) throw Error("non_reduced_family", "non-reduced family", "discriminant vanishes identically");
    auto squarefree = [](const UPoly& p) {
        UPoly g = gcd(p, derivative(p));
        UPoly q, r;
        divmod(p, g, q, r);
        return q;
    };
    std::vector<Cx> pts = polynomial_roots(squarefree(d));
    std::vector<Cx> lead = polynomial_roots(squarefree(f.leading()));
    Real tol = epsilon_bits(static_cast<int>(current_bits() / 2));
    std::vector<SingularValue> out;
    for (const auto& p : pts) out.push_back({p, Real(0), false});
    for (const auto& p : lead) {
        bool found = false;
        for (auto& s : out)
            if (abs(s.value - p) < tol) {
                s.leading = true;
                found = true;
            }
        if (!found) out.push_back({p, Real(0), true});
    }
    for (auto& s : out) {
        Real m = -1;
        for (const auto& o : out) {
            if (&o == &s) continue;
            Real dd = abs(o.value - s.value);
            if (m < 0 || dd < m) m = dd;
        }
        s.isolation = m < 0 ? Real(1) : Real(m / 2);
    }
    Real tie = epsilon_bits(static_cast<int>(current_bits() / 2));
    std::sort(out.begin(), out.end(), [&](const SingularValue& a, const SingularValue& b) { return cx_less(a.value, b.value, tie); });
    return out;
}

void validate_loop(const RootFamily& f, const Loop& loop, const std::vector<SingularValue>& sing) {
    (void)f;
    if (loop.radius <= 0) throw Error("invalid_loop", "loop radius must be positive");
    Path path = make_path(loop);
    Real r = loop.radius;
    if (loop.at_infinity) {
        if (abs(path.base) >= r / (1 + kMargin)) throw Error("invalid_loop", "base point too close to the circle about infinity");
        for (const auto& s : sing) {
            if (abs(s.value) >= r / (1 + kMargin))
                throw Error("invalid_loop", "singular value outside the circle about infinity", to_string(s.value));
            if (dist_point_segment(s.value, path.base, path.start) <= kMargin * s.isolation)
                throw Error("invalid_loop", "connecting path passes near a singular value", to_string(s.value));
        }
        return;
    }
    if (abs(path.base - path.center) <= r * (1 + kMargin)) throw Error("invalid_loop", "base point inside the loop");
    for (const auto& s : sing) {
        Real dc = abs(s.value - path.center);
        if (dc < r) {
            if (dc >= r / (1 + kMargin)) throw Error("invalid_loop", "encircled singular value too close to the circle", to_string(s.value));
            continue;
        }
        Real dp = std::min(Real(dc - r), dist_point_segment(s.value, path.base, path.start));
        if (dp <= r * (1 + kMargin)) throw Error("invalid_loop", "singular value too close to the loop", to_string(s.value));
    }
}

Loop loop_around(const RootFamily& f, const GaussRat& base, const Cx& center) {
    auto sing = singular_parameters(f);
    Cx b = to_cx(base);
    Real tiny = epsilon_bits(static_cast<int>(current_bits() / 2));
    Real r = abs(b - center) / (2 * (1 + kMargin));
    for (const auto& s : sing) {
        Real d = abs(s.value - center);
        if (d > tiny) r = std::min(r, Real(d / (2 + 2 * kMargin)));
    }
    Loop loop{base, center, r, false};
    for (int attempt = 0; attempt < 60; ++attempt) {
        try {
            validate_loop(f, loop, sing);
            return loop;
        } catch (const Error&) {
            loop.radius /= 2;
        }
    }
    validate_loop(f, loop, sing);
    return loop;
}

Loop loop_around_infinity(const RootFamily& f, const GaussRat& base) {
    auto sing = singular_parameters(f);
    Cx b = to_cx(base);
    Real big = std::max(Real(1), Real(abs(b)));
    for (const auto& s : sing) big = std::max(big, Real(abs(s.value)));
    Loop loop{base, cx(0), 2 * big, true};
    // Prefer the radial direction; otherwise take the candidate with the most clearance.
    Real preferred = (b.re == 0 && b.im == 0) ? Real(0) : Real(atan2(b.im, b.re));
    Real two_pi = 2 * boost::math::constants::pi<Real>();
    Real best_score = -1, best_angle = preferred;
    for (int k = 0; k < 64; ++k) {
        loop.exit_angle = preferred + two_pi * k / 64;
        Path path = make_path(loop);
        Real score = -1;
        for (const auto& s : sing) {
            Real q = dist_point_segment(s.value, path.base, path.start) / s.isolation;
            if (score < 0 || q < score) score = q;
        }
        if (score < 0 || (k == 0 && score > 1)) {
            best_angle = loop.exit_angle;
            break;
        }
        if (score > best_score) {
            best_score = score;
            best_angle = loop.exit_angle;
        }
    }
    loop.exit_angle = best_angle;
    validate_loop(f, loop, sing);
    return loop;
}

std::vector<Cx> sorted_roots(const RootFamily& f, const Cx& x) {
    std::vector<Cx> r = roots_cx(coefficients_at(f, x));
    if (static_cast<int>(r.size()) != f.degree()) throw Error("singular_base", "leading coefficient vanishes at the base point");
    Real tol = epsilon_bits(static_cast<int>(current_bits() / 2));
    std::sort(r.begin(), r.end(), [&](const Cx& a, const Cx& b) { return cx_less(a, b, tol); });
    return r;
}

TrackResult track_roots(const RootFamily& f, const Loop& loop, const TrackOptions& opt) {
    PrecisionGuard guard(opt.precision);
    validate_loop(f, loop, singular_parameters(f));
    Path path = make_path(loop);
    TrackResult out;
    out.max_residual = 0;
    out.base_roots = sorted_roots(f, path.base);
    Real sep0 = min_pairwise(out.base_roots);
    if (sep0 == 0) throw Error("singular_base", "base point is a singular value");

    std::vector<Cx> roots = out.base_roots;
    std::vector<Cx> df_c;
    Real eps = epsilon_bits(12);
    Real max_step(opt.max_step), min_step = std::max(Real(opt.min_step), epsilon_bits(static_cast<int>(current_bits() / 2)));
    int n = f.degree();
    for (int piece = 0; piece < 3; ++piece) {
        Real t = 0, h = max_step;
        while (t < 1) {
            Real tn = t + h;
            if (tn > 1) tn = 1;
            std::vector<Cx> c = coefficients_at(f, path.at(piece, tn));
            std::vector<Cx> dc;
            for (int k = 1; k <= n; ++k) dc.push_back(Real(k) * c[k]);
            Real dmin = min_pairwise(roots);
            std::vector<Cx> next = roots;
            bool ok = abs(c.back()) != 0;
            Real worst_res = 0;
            for (int i = 0; ok && i < n; ++i) {
                Cx z = roots[i];
                bool conv = false;
                for (int it = 0; it < 40; ++it) {
                    Cx dv = horner(dc, z);
                    if (dv.re == 0 && dv.im == 0) break;
                    Cx step = horner(c, z) / dv;
                    z = z - step;
                    if (abs(step) <= eps * std::max(Real(1), Real(abs(z)))) {
                        conv = true;
                        break;
                    }
                }
                if (!conv || abs(z - roots[i]) >= Real(0.4) * dmin) ok = false;
                next[i] = z;
                if (ok) worst_res = std::max(worst_res, Real(abs(horner(c, z))));
            }
            if (!ok) {
                h /= 2;
                if (h < min_step) {
                    std::ostringstream ctx;
                    ctx << "piece " << piece << " at t=" << t.str(20) << " x=" << to_string(path.at(piece, t));
                    throw Error("continuation_failure", "root continuation failed: step refinement exhausted", ctx.str());
                }
                continue;
            }
            roots = std::move(next);
            out.max_residual = std::max(out.max_residual, worst_res);
            ++out.steps;
            t = tn;
            h = std::min(Real(2 * h), max_step);
        }
    }
    out.perm.assign(n, -1);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        Real bd = -1;
        for (int j = 0; j < n; ++j) {
            Real d = abs(roots[i] - out.base_roots[j]);
            if (bd < 0 || d < bd) {
                bd = d;
                best = j;
            }
        }
        if (bd >= sep0 / 4 || used[best]) throw Error("continuation_failure", "tracked roots do not return to the base fibre");
        used[best] = true;
        out.perm[i] = best;
    }
    return out;
}

std::vector<LoopMonodromy> monodromy_all(const RootFamily& f, const GaussRat& base, const TrackOptions& opt) {
    PrecisionGuard guard(opt.precision);
    auto sing = singular_parameters(f);
    Cx b = to_cx(base);
    Loop inf = loop_around_infinity(f, base);
    Real cut = inf.exit_angle;
    Real two_pi = 2 * boost::math::constants::pi<Real>();
    std::vector<std::pair<Real, Loop>> keyed;
    for (const auto& s : sing) {
        Real a = atan2(s.value.im - b.im, s.value.re - b.re) - cut;
        while (a <= 0) a += two_pi;
        while (a > two_pi) a -= two_pi;
        keyed.push_back({a, loop_around(f, base, s.value)});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<LoopMonodromy> out;
    for (auto& [a, loop] : keyed) out.push_back({loop, track_roots(f, loop, opt)});
    out.push_back({inf, track_roots(f, inf, opt)});
    return out;
}

Perm compose(const Perm& first, const Perm& then) {
    Perm r(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) r[i] = then[first[i]];
    return r;
}

Perm identity_perm(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

bool is_identity(const Perm& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) return false;
    return true;
}

std::vector<int> cycle_type(const Perm& p) {
    std::vector<int> out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        if (len > 1) out.push_back(len);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

std::string cycle_notation(const Perm& p, int offset) {
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i)) continue;
        out += "(";
        bool first = true;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            if (!first) out += " ";
            out += std::to_string(j + offset);
            first = false;
        }
        out += ")";
    }
    return out.empty() ? "id" : out;
}

size_t generated_group_order(const std::vector<Perm>& gens) {
    if (gens.empty()) return 1;
    std::set<Perm> group{identity_perm(static_cast<int>(gens[0].size()))};
    std::vector<Perm> frontier(group.begin(), group.end());
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& g : frontier)
            for (const auto& s : gens) {
                Perm h = compose(g, s);
                if (group.insert(h).second) next.push_back(h);
            }
        frontier = std::move(next);
    }
    return group.size();
}

MonodromyMatrix mat_mul(const MonodromyMatrix& a, const MonodromyMatrix& b) {
    MonodromyMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

GaussRat det(const MonodromyMatrix& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

MonodromyMatrix power_monodromy(const MonodromyMatrix& m, int k) {
    if (k < 0) throw Error("negative_power", "power must be nonnegative", std::to_string(k));
    MonodromyMatrix r{{{GaussRat(1), GaussRat(0)}, {GaussRat(0), GaussRat(1)}}};
    MonodromyMatrix b = m;
    while (k) {
        if (k & 1) r = mat_mul(r, b);
        b = mat_mul(b, b);
        k >>= 1;
    }
    return r;
}

MonodromyMatrix parse_matrix(const std::string& text) {
    std::vector<std::string> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(row);
    if (rows.size() != 2) throw Error("parse_error", "matrix needs two rows separated by ';'", text);
    MonodromyMatrix m;
    for (int i = 0; i < 2; ++i) {
        std::vector<std::string> cells;
        std::stringstream rs(rows[i]);
        std::string cell;
        while (std::getline(rs, cell, ',')) cells.push_back(cell);
        if (cells.size() != 2) throw Error("parse_error", "matrix rows need two entries", rows[i]);
        for (int j = 0; j < 2; ++j) m[i][j] = parse_gauss(cells[j]);
    }
    return m;
}

std::string to_string(const MonodromyMatrix& m) {
    return "[" + m[0][0].to_string() + " " + m[0][1].to_string() + "; " + m[1][0].to_string() + " " + m[1][1].to_string() + "]";
}

std::string KodairaFibre::name() const {
    if (symbol == "I") return "I" + std::to_string(n);
    if (symbol == "I*") return "I" + std::to_string(n) + "*";
    return symbol;
}

KodairaFibre classify_kodaira(const MonodromyMatrix& m) {
    Int a[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (m[i][j].im != 0 || denominator(m[i][j].re) != 1)
                throw Error("not_integral", "monodromy matrix must have integer entries", to_string(m));
            a[i][j] = numerator(m[i][j].re);
        }
    if (a[0][0] * a[1][1] - a[0][1] * a[1][0] != 1) throw Error("determinant", "monodromy matrix must have determinant 1", to_string(m));
    Int tr = a[0][0] + a[1][1];
    auto nilpotent_gcd = [&](int s) {
        Int g = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g = boost::multiprecision::gcd(g, Int(s * a[i][j] - (i == j ? 1 : 0)));
        return Int(boost::multiprecision::abs(g));
    };
    if (tr == 2) return {"I", static_cast<int>(nilpotent_gcd(1))};
    if (tr == -2) return {"I*", static_cast<int>(nilpotent_gcd(-1))};
    bool neg_c = a[1][0] < 0;
    if (tr == 1) return {neg_c ? "II" : "II*", 0};
    if (tr == 0) return {neg_c ? "III" : "III*", 0};
    if (tr == -1) return {neg_c ? "IV" : "IV*", 0};
    throw Error("not_finite_type", "not a Kodaira local monodromy of finite type here", to_string(m));
}

}  // namespace toric
