#pragma once

#include <map>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/polytope.hpp"

namespace toric {

using RaySet = std::vector<int>;  // sorted indices into a fan's ray list

// H-representation of a strictly convex cone inside its linear span.
struct ConeData {
    std::size_t dim = 0;
    Mat equations;                  // x.e = 0 on the span
    Mat facets;                     // x.f >= 0 on the cone
    std::vector<RaySet> facet_rays; // positions (into the generator list) on each facet

    bool contains(const Vec& x) const;
    bool relint_contains(const Vec& x) const;
};

ConeData cone_data(const std::vector<Vec>& rays, std::size_t ambient_rank);

struct Fan {
    std::size_t rank = 0;
    std::vector<Vec> rays;
    std::vector<RaySet> cones;  // maximal cones, sorted

    static Fan make(std::size_t rank, std::vector<Vec> rays, std::vector<RaySet> cones);
    std::vector<Vec> cone_rays(const RaySet& c) const;
    // Every cone of the fan (faces of the maximal cones), including the zero cone.
    std::vector<RaySet> all_cones() const;
    int ray_index(const Vec& v) const;  // -1 if absent
};

struct FanClass {
    bool simplicial = false;
    bool smooth = false;
    bool complete = false;
    bool crepant = false;  // only meaningful when a reference polytope is supplied
};

Fan face_fan(const LatticePolytope& p);
Fan normal_fan(const LatticePolytope& p);
Fan star_subdivide(const Fan& f, const Vec& ray);
FanClass classify(const Fan& f, const LatticePolytope* delta = nullptr);
bool is_smooth_cone(const std::vector<Vec>& rays);
std::vector<Vec> mori_cone(const Fan& f);

struct FanMorphism {
    Mat matrix;  // acts on row vectors: v -> v*matrix
    Fan domain;
    Fan codomain;
    std::vector<RaySet> certificate;  // smallest codomain cone per maximal domain cone
};

// Smallest cone of f containing all vectors; false if no cone does.
bool smallest_cone(const Fan& f, const std::vector<Vec>& vs, RaySet& out);

FanMorphism check_compatibility(const Mat& matrix, const Fan& domain, const Fan& codomain);
Fan subdivide_domain(const Mat& matrix, const Fan& domain, const Fan& codomain);
bool is_fibration(const FanMorphism& phi);

struct KernelFan {
    Fan fan;            // in coordinates of `lattice`
    Sublattice lattice; // saturated kernel
    std::vector<Vec> ambient_rays;
};
KernelFan kernel_fan(const FanMorphism& phi);

// For each codomain ray: the domain rays and exponents of its pulled-back coordinate.
struct MonomialMap {
    std::vector<std::vector<std::pair<int, Int>>> images;
};
MonomialMap homogeneous_map(const FanMorphism& phi);

struct FibrationCandidate {
    Sublattice subspace;
    SubPolytope slice;
    LatticePolytope projection;
    bool balanced = false;
};
std::vector<FibrationCandidate> search_fibrations(const LatticePolytope& delta, std::size_t fibre_dim);

// True if some unimodular map carries the vertex set of a onto that of b.
bool lattice_equivalent(const LatticePolytope& a, const LatticePolytope& b);

}  // namespace toric
