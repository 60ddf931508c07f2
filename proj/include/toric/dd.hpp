#pragma once

#include "toric/lattice.hpp"

namespace toric {

// Primitive extreme rays of the pointed cone {x in R^dim : a.x >= 0 for every row a},
// sorted lexicographically. Throws "not_pointed" if the rows have rank < dim.
std::vector<Vec> extreme_rays(const Mat& ineqs, std::size_t dim);

// Primitive inner facet normals of cone(gens); gens must span R^dim.
inline std::vector<Vec> cone_facets(const Mat& gens, std::size_t dim) { return extreme_rays(gens, dim); }

}  // namespace toric
