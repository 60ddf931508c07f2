#pragma once

#include <array>
#include <vector>

#include "toric/poly.hpp"
#include "toric/polytope.hpp"

namespace toric {

// a^3, b^2 and d of the quartic normal form; only these combinations are ever used.
struct K3NormalForm {
    ParamScalar a3, b2, d;
};

// pi = j1*j2, sigma = j1 + j2.
struct ModuliPoint {
    ParamScalar pi, sigma;
};

struct LambdaNormalForm {
    ParamScalar Lambda0, Lambda1;
    K3NormalForm nf;
};

// Coefficients lambda_0..lambda_5 of the hypersurface in the space polar to WP(1,1,4,6).
LambdaNormalForm normal_form_from_lambda(const std::array<ParamScalar, 6>& lambda);
ModuliPoint pi_sigma(const K3NormalForm& nf);

ModuliPoint fibre_params_Y(const ParamScalar& u, const ParamScalar& v, const ParamScalar& xi0, const ParamScalar& xi1);
ModuliPoint fibre_params_Z(const ParamScalar& s, const ParamScalar& t, const ParamScalar& B, const ParamScalar& psi0,
                           const ParamScalar& psi1, const ParamScalar& psi_s);

struct YParams {
    ParamScalar xi0, xi1;
};
YParams match_parameters(const ParamScalar& B, const ParamScalar& psi0, const ParamScalar& psi1);

// Roots of j^2 - sigma*j + pi. When the discriminant is not a rational square the roots carry a formal radical.
struct JRoots {
    ParamScalar j1, j2, discriminant;
    bool rational = false;
};
JRoots j_invariants(const ModuliPoint& mp);

// Singular fibres sit over 0, -1, infinity, alpha and beta.
struct FibreLocus {
    ParamScalar alpha, beta;
    bool rational = false;
};
FibreLocus singular_fibre_locus(const ParamScalar& xi0);

struct AdeComponent {
    std::vector<Vec> nodes;
    int sign = 0;  // sign of the pairing with the direction on every node
};
// Components of the 1-skeleton restricted to edges whose endpoints pair with d with the same nonzero sign.
std::vector<AdeComponent> ade_subgraph(const LatticePolytope& p, const Vec& d);

// Square root of a nonnegative rational if it is rational.
bool rational_sqrt(const Rat& q, Rat& root);

}  // namespace toric
