#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "toric/error.hpp"

namespace toric {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;  // row-major; every row has the same length
using RatVec = std::vector<Rat>;

struct HermiteResult {
    Mat H;
    Mat U;
};

// Saturated sublattice of Z^ambient_rank, rows of `basis` in echelon form.
struct Sublattice {
    Mat basis;
    std::size_t ambient_rank = 0;

    std::size_t rank() const { return basis.size(); }
    bool contains(const Vec& v) const;
    // Coordinates of v with respect to `basis`; throws if v is not in the sublattice.
    Vec coordinates(const Vec& v) const;
    Vec ambient(const Vec& coords) const;
};

Vec make_vec(std::initializer_list<long> xs);
Mat make_mat(std::initializer_list<std::initializer_list<long>> rows);

Int dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Int& k);
Vec neg(const Vec& a);
bool is_zero(const Vec& v);
Int content(const Vec& v);  // gcd of entries, 0 for the zero vector

// v divided by the gcd of its entries.
Vec primitive(const Vec& v);

// Row vector times matrix.
Vec mul(const Vec& v, const Mat& m);
Mat mul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m, std::size_t ncols);
Mat identity(std::size_t n);

Int det(const Mat& m);
std::size_t rank(const Mat& m);

// Row-style Hermite normal form: U*m = H, U unimodular, pivots positive,
// entries above pivots reduced into [0, pivot).
HermiteResult hermite_form(const Mat& m, std::size_t ncols);
inline HermiteResult hermite_form(const Mat& m) { return hermite_form(m, m.empty() ? 0 : m.front().size()); }

// Basis of the saturated left kernel {c : c*points = 0} in Hermite form.
Mat kernel_basis(const Mat& points, std::size_t ncols);
inline Mat kernel_basis(const Mat& points) { return kernel_basis(points, points.empty() ? 0 : points.front().size()); }

// Basis of {x : m*x = 0} (right kernel), Hermite form.
Mat right_kernel(const Mat& m, std::size_t ncols);

// Saturation of the row span: basis of span_Q(rows) intersected with Z^n.
Sublattice saturation(const Mat& rows, std::size_t ncols);

// Rational solve of x*basis = v for x; returns false if v is outside the span.
bool solve_row(const Mat& basis, const Vec& v, RatVec& x);

// Integer matrix C (n x k) with basis*C = I_k for a saturated basis (k x n).
Mat right_inverse(const Mat& basis, std::size_t ncols);

std::string to_string(const Vec& v);
std::string to_string(const Mat& m);

struct VecLess {
    bool operator()(const Vec& a, const Vec& b) const;
};

}  // namespace toric
