#pragma once

#include "fingeo/geometry.hpp"

#include <optional>
#include <vector>

namespace fingeo {

// Gamma matrices acting on spinors valued in W, together with rho_W.
// exact_gammas is present when the entries rationalized exactly.
struct SpinorSetup {
    Representation rep_w;
    std::vector<CMatrix> gammas;
    std::optional<std::vector<RatMatrix>> exact_gammas;
};

// Residual of {g_i,g_j} + (2/3)(g_i+g_j) = (1/3)(delta_ij - 1): max over
// (i,j) of the Frobenius norm (unitary-conjugation invariant).
double gamma_relation_residual(const std::vector<CMatrix>& gammas);

// Exact variant: max absolute entry of the residual matrices.
Rational gamma_relation_residual_exact(const std::vector<RatMatrix>& gammas);

// Max Frobenius deviation of rho(g) gamma_i rho(g)^-1 = gamma_{g i g^-1}.
double equivariance_residual(const AdStableClass& cls, const Representation& rep_w,
                             const std::vector<CMatrix>& gammas);

// The 2-dimensional standard irreducible representation of the s3 preset,
// realized with integer matrices on the sum-zero plane.
Representation s3_standard_rep(GroupPtr s3);

// Equivariant solutions of the gamma relation: equivariance is imposed as an
// exact linear constraint first; the reduced quadratic system is solved
// exactly over the reals when small and by a seeded complex multistart
// otherwise. All returned setups are re-verified; exact ones come first.
// Throws NotFound when the search exhausts without a solution.
std::vector<SpinorSetup> gamma_search(GroupPtr g, const AdStableClass& cls,
                                      const Representation& rep_w, double tol = 1e-12);

// Validation path for user-supplied gammas.
SpinorSetup make_spinor_setup(Representation rep_w, std::vector<CMatrix> gammas,
                              std::optional<std::vector<RatMatrix>> exact = std::nullopt);

struct DiracOperator {
    int npoints = 0;
    int wdim = 0;
    CMatrix mat;                     // acts on spinor components psi_x, index x*wdim + s
    std::optional<RatMatrix> exact;  // present when gammas were exact
};

// D = del^i gamma_i - A_a^i gamma_i tau_W^a assembled as a matrix; the
// partial derivatives are the bein components of d, so any frame works.
DiracOperator dirac_operator(const Connection& a, const Frame& frame, const SpinorSetup& spin);

// The connection part sum_{a,i} A_a^i(x) gamma_i tau_W^a as per-point blocks.
std::vector<CMatrix> dirac_connection_term(const Connection& a, const Frame& frame,
                                           const SpinorSetup& spin);

struct SpectrumEntry {
    Complex value;
    int multiplicity = 1;
};

// Eigenvalues sorted by (re, im), clustered at the given tolerance.
// Float arithmetic even for exact operators.
std::vector<SpectrumEntry> spectrum(const CMatrix& m, double cluster_tol = 1e-9);

CMatrix to_complex(const RatMatrix& m);

}  // namespace fingeo
