#pragma once

#include <array>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "toric/lattice.hpp"
#include "toric/poly.hpp"

namespace toric {

using Real = boost::multiprecision::mpfr_float;

// Sets the working precision of Real on this thread for the guard's lifetime.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

struct GaussRat {
    Rat re, im;

    GaussRat() = default;
    GaussRat(long r) : re(r) {}
    GaussRat(Rat r, Rat i = 0) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat conj() const { return {re, -im}; }
    Rat norm() const { return re * re + im * im; }
    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator-() const { return {-re, -im}; }
    GaussRat operator*(const GaussRat& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    GaussRat operator/(const GaussRat& o) const;
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }
    std::string to_string() const;
};

GaussRat parse_gauss(const std::string& text);  // "a", "a+bi", "bi", rationals allowed

struct Cx {
    Real re, im;
};

inline Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
inline Cx operator/(const Cx& a, const Cx& b) {
    Real n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

Cx to_cx(const GaussRat& z);
Real abs(const Cx& z);
std::string to_string(const Cx& z, int digits = 12);

// Univariate polynomial, coefficient k multiplies x^k.
using UPoly = std::vector<GaussRat>;

UPoly trim(UPoly p);
UPoly add(const UPoly& a, const UPoly& b);
UPoly sub(const UPoly& a, const UPoly& b);
UPoly mul(const UPoly& a, const UPoly& b);
UPoly derivative(const UPoly& p);
void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly gcd(UPoly a, UPoly b);  // monic
std::string to_string(const UPoly& p, const std::string& var = "x");

// Roots of a squarefree polynomial at the current precision (Aberth iteration, Newton polish).
std::vector<Cx> polynomial_roots(const UPoly& p);

// f(x, y) = sum_k coeffs[k](x) * y^k.
struct RootFamily {
    std::vector<UPoly> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const UPoly& leading() const { return coeffs.back(); }
};

RootFamily make_family(std::vector<UPoly> coeffs);
// Polynomial text in x and y; the symbol I is the imaginary unit, other symbols are rejected.
RootFamily parse_family(const std::string& text);

// Discriminant of f in y, as a polynomial in x.
UPoly discriminant(const RootFamily& f);

struct SingularValue {
    Cx value;
    Real isolation;  // half the distance to the nearest other singular value
    bool leading = false;
};
std::vector<SingularValue> singular_parameters(const RootFamily& f);

struct Loop {
    GaussRat base;
    Cx center;
    Real radius;
    // Circle |x| = radius about the origin traversed clockwise, i.e. anticlockwise about infinity.
    bool at_infinity = false;
    Real exit_angle = 0;  // direction of the connecting segment of a loop about infinity
};

// Loop from base around center with a radius chosen from the singular values of f.
Loop loop_around(const RootFamily& f, const GaussRat& base, const Cx& center);
Loop loop_around_infinity(const RootFamily& f, const GaussRat& base);
void validate_loop(const RootFamily& f, const Loop& loop, const std::vector<SingularValue>& sing);

using Perm = std::vector<int>;

struct TrackOptions {
    unsigned precision = 128;
    double max_step = 1.0 / 32;  // in path parameter per piece
    double min_step = 1e-15;
};

struct TrackResult {
    Perm perm;          // root i at the base continues to root perm[i]
    Real max_residual;  // max |f| over all accepted corrector results
    long steps = 0;
    std::vector<Cx> base_roots;
};

// Roots of f at x sorted by real part, then imaginary part.
std::vector<Cx> sorted_roots(const RootFamily& f, const Cx& x);
TrackResult track_roots(const RootFamily& f, const Loop& loop, const TrackOptions& opt = {});

// Monodromy around every finite singular value and around infinity. Finite loops are ordered
// anticlockwise by the direction of their center seen from the base, starting at the direction in
// which the loop about infinity leaves the base; in that order the composite followed by the loop
// about infinity is the identity.
struct LoopMonodromy {
    Loop loop;
    TrackResult result;
};
std::vector<LoopMonodromy> monodromy_all(const RootFamily& f, const GaussRat& base, const TrackOptions& opt = {});

Perm compose(const Perm& first, const Perm& then);  // apply first, then then
Perm identity_perm(int n);
bool is_identity(const Perm& p);
std::vector<int> cycle_type(const Perm& p);  // sorted descending, fixed points omitted
std::string cycle_notation(const Perm& p, int offset = 1);
size_t generated_group_order(const std::vector<Perm>& gens);

using MonodromyMatrix = std::array<std::array<GaussRat, 2>, 2>;

MonodromyMatrix mat_mul(const MonodromyMatrix& a, const MonodromyMatrix& b);
GaussRat det(const MonodromyMatrix& m);
MonodromyMatrix power_monodromy(const MonodromyMatrix& m, int k);
MonodromyMatrix parse_matrix(const std::string& text);  // "a,b;c,d"
std::string to_string(const MonodromyMatrix& m);

struct KodairaFibre {
    std::string symbol;  // I, I*, II, III, IV, II*, III*, IV*
    int n = 0;           // only for I and I*
    std::string name() const;
};
KodairaFibre classify_kodaira(const MonodromyMatrix& m);

}  // namespace toric
