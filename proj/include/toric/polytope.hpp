#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

// <u, normal> >= -offset for every u in the polytope.
struct Facet {
    Vec normal;
    Int offset;
};

struct Face {
    int dim = -1;
    std::vector<int> vertices;  // indices into the polytope's vertex list
    std::vector<int> facets;    // facets containing the face
    std::size_t l = 0;          // lattice points on the face
    std::size_t lstar = 0;      // lattice points in its relative interior
};

struct SkeletonGraph {
    std::vector<Vec> nodes;
    std::vector<std::pair<int, int>> edges;
};

class LatticePolytope {
public:
    LatticePolytope() = default;

    static LatticePolytope hull(const std::vector<Vec>& points);

    std::size_t rank() const { return rank_; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }

    bool contains(const Vec& u) const;
    bool origin_interior() const;
    std::vector<int> tight_facets(const Vec& u) const;

    // All lattice points, lexicographically sorted (cached).
    const std::vector<Vec>& points() const;
    const std::vector<Vec>& interior_points() const;
    const std::vector<Vec>& boundary_points() const;
    // Faces of dimension d, 0 <= d < rank (cached).
    const std::vector<Face>& faces(int d) const;

    bool operator==(const LatticePolytope& o) const { return rank_ == o.rank_ && vertices_ == o.vertices_; }

private:
    struct Cache;
    const Cache& cache() const;
    void compute_points(Cache& c) const;
    void compute_faces(Cache& c) const;

    std::size_t rank_ = 0;
    std::vector<Vec> vertices_;
    std::vector<Facet> facets_;
    std::shared_ptr<Cache> cache_;
};

// A polytope living in a saturated sublattice, with coordinates relative to its basis.
struct SubPolytope {
    LatticePolytope poly;
    Sublattice lattice;
    std::vector<Vec> ambient_vertices() const;
    std::vector<Vec> ambient_points() const;
};

LatticePolytope polar(const LatticePolytope& p);
std::vector<RatVec> polar_vertices(const LatticePolytope& p);
bool is_reflexive(const LatticePolytope& p);
std::pair<std::vector<Vec>, std::vector<Vec>> lattice_points(const LatticePolytope& p);
const std::vector<Face>& faces(const LatticePolytope& p, int d);
Face dual_face(const LatticePolytope& p, const Face& f);
SkeletonGraph skeleton(const LatticePolytope& p);
LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b);

// Hull of points containing the origin inside the saturated lattice of their linear span.
SubPolytope hull_in_span(const std::vector<Vec>& points, std::size_t ambient_rank);

// Points satisfying every inequality <u,n> >= -c.
std::vector<Vec> filter_points(const std::vector<Vec>& points, const std::vector<Facet>& ineqs);

}  // namespace toric
