#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/poly.hpp"
#include "toric/polytope.hpp"

namespace toric {

struct NefPartition {
    LatticePolytope delta;        // M side
    LatticePolytope delta_polar;  // N side, its vertices are partitioned
    std::vector<std::vector<int>> parts;  // indices into delta_polar.vertices()
    std::vector<SubPolytope> nabla_i;     // Conv(V_i, 0)
    LatticePolytope nabla;                // sum of nabla_i
    std::vector<SubPolytope> delta_i;     // M side pieces, sum is delta
};

// assignment[j] = part of the j-th vertex of polar(delta).
NefPartition make_nef_partition(const LatticePolytope& delta, const std::vector<int>& assignment);
// Parts given as vertex lists of polar(delta).
NefPartition make_nef_partition(const LatticePolytope& delta, const std::vector<std::vector<Vec>>& parts);
NefPartition dual_nef_partition(const NefPartition& np);

// Simplified drops the points interior to facets.
enum class MonomialSelection { All, VerticesOrigin, Simplified };

using CoefficientMap = std::map<Vec, ParamScalar, VecLess>;

// Lattice points of a piece selected by the mode, sorted.
std::vector<Vec> selected_points(const SubPolytope& piece, MonomialSelection sel);

// One term per selected m in delta with exponent <m, v> + 1 on each ray.
// Missing coefficients default to a<k>, k the position among the selected points.
SparsePoly anticanonical_polynomial(const LatticePolytope& delta, const std::vector<Vec>& rays, MonomialSelection sel,
                                    const CoefficientMap& coefficients = {}, std::vector<std::string> var_names = {});

// Exponent of ray v in the part-i polynomial is <m, v> - min_{m' in delta_i} <m', v>.
std::vector<SparsePoly> nef_ci_polynomials(const NefPartition& np, const std::vector<Vec>& rays, MonomialSelection sel,
                                           const std::vector<CoefficientMap>& coefficients = {},
                                           std::vector<std::string> var_names = {});

struct HodgePair {
    Int h11;
    Int h21;
};
HodgePair batyrev_hodge(const LatticePolytope& delta);

struct GkzDegrees {
    std::vector<Vec> columns;  // degree vector (one entry per Mori generator) per coefficient
    std::vector<Vec> points;   // lattice point of the coefficient, zero for the origin
    std::vector<int> part;
    std::vector<bool> origin_flags;
    std::vector<std::string> names;
    std::vector<ParamScalar> moduli_monomials;  // one per Mori generator
    std::size_t moduli() const { return moduli_monomials.size(); }
};

// Coefficient order: the rays of each part in the given order, then that part's origin.
GkzDegrees gkz_degrees(const Fan& mirror_fan, const std::vector<std::vector<int>>& parts,
                       std::vector<std::string> names = {});
// Mirror fan = face fan of the polar of nabla, parts from the dual partition.
GkzDegrees gkz_degrees(const NefPartition& np,
                       const std::function<std::string(int, const Vec&)>& namer = {});

Int gkz_coefficient(const GkzDegrees& deg, const std::vector<Int>& k);

// k[free] = m, k[shifted] = n + shift*m, so that the support constraint becomes n >= 0.
struct GkzSeries {
    int free = 0;
    int shifted = 1;
    Int shift;
    std::map<std::pair<int, int>, Int> table;  // (m, n) -> coefficient, m + n <= max_total
};
GkzSeries gkz_series_reindexed(const GkzDegrees& deg, int max_total);

Int factorial(int n);

}  // namespace toric
