#pragma once

#include "fingeo/group.hpp"
#include "fingeo/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fingeo {

// Finite-dimensional unital algebra by structure constants: basis products
// b_i b_j = sum_k c[i][j][k] b_k. Star, when present, is a linear
// anti-homomorphic involution (scalars here are rational, so antilinear
// degenerates to linear).
struct FinAlgebra {
    int dim = 0;
    std::vector<std::string> basis_names;
    std::vector<std::vector<std::vector<Rational>>> sc;  // sc[i][j] = coords of b_i b_j
    std::vector<Rational> unit;
    std::optional<RatMatrix> star;

    std::vector<Rational> mult(const std::vector<Rational>& a,
                               const std::vector<Rational>& b) const;
    RatMatrix left_mult(const std::vector<Rational>& a) const;   // L_a: p -> a p
    RatMatrix right_mult(const std::vector<Rational>& a) const;  // R_a: p -> p a
    std::vector<Rational> apply_star(const std::vector<Rational>& a) const;
};

// Full associativity/unit scan; star verified anti-homomorphic involutive.
FinAlgebra make_algebra(int dim, std::vector<std::vector<std::vector<Rational>>> sc,
                        std::vector<Rational> unit, std::vector<std::string> names = {},
                        std::optional<RatMatrix> star = std::nullopt);

// Pointwise function algebra on n points (star = identity).
FinAlgebra function_algebra(int npoints);

// Group algebra with basis {e_g} and star g -> g^{-1}.
FinAlgebra group_algebra(const FiniteGroup& g);

// Left action of A on the vector space of P: one operator per A-basis
// element, extended linearly.
struct AlgebraAction {
    std::vector<RatMatrix> act;  // act[j] : P -> P for basis a_j

    std::vector<Rational> apply(const std::vector<Rational>& a,
                                const std::vector<Rational>& p) const;
};

// Validates (ab) |> p = a |> (b |> p) and 1 |> p = p; throws NotAnAction.
void validate_action(const FinAlgebra& p, const FinAlgebra& a, const AlgebraAction& action);

// Group acting by permuting points: a_g |> delta_x = delta_{sigma_g(x)}.
AlgebraAction permutation_action(const FiniteGroup& g,
                                 const std::vector<std::vector<int>>& point_images);
AlgebraAction trivial_action(const FinAlgebra& p, const FinAlgebra& a);

// X = P >| A on the basis p_i (x) a_j with (p (x) a)(q (x) b) = p(a|>q) (x) ab;
// the basis index is i * dimA + j. Associativity of the result is rescanned.
FinAlgebra cross_product(const FinAlgebra& p, const FinAlgebra& a, const AlgebraAction& action);

// X together with embeddings of P and A and the factorization isomorphism
// P (x) A -> X, p (x) a -> p a.
struct Factorization {
    FinAlgebra x, p, a;
    RatMatrix incl_p, incl_a;  // dimX x dimP / dimX x dimA
    RatMatrix iso;             // dimX x (dimP*dimA), columns indexed i*dimA+j
    RatMatrix iso_inv;
};

// Verifies the embeddings are subalgebra maps and the product map is a
// linear isomorphism; throws NotAFactorization with the rank deficiency.
Factorization make_factorization(FinAlgebra x, FinAlgebra p, FinAlgebra a, RatMatrix incl_p,
                                 RatMatrix incl_a);

// The canonical factorization carried by a cross product.
Factorization cross_product_factorization(const FinAlgebra& p, const FinAlgebra& a,
                                          const AlgebraAction& action);

// Reordering map Psi : A (x) P -> P (x) A, Psi(a (x) p) = iso^{-1}(a p).
// Row/column index conventions: a (x) p at j * dimP + i, p (x) a at i * dimA + j.
struct Entwining {
    int dim_p = 0, dim_a = 0;
    RatMatrix psi;
};

Entwining entwining_from_factorization(const Factorization& f);
Entwining flip_entwining(int dim_p, int dim_a);

// e : A -> P with e(1) = 1 and e(ab) = mult (id (x) e) Psi(a (x) e(b)).
struct EMap {
    RatMatrix e;  // dimP x dimA
};

EMap emap_from_action(const FinAlgebra& p, const FinAlgebra& a, const AlgebraAction& action);

// Residual of the e-map axiom over all basis pairs (exact zero iff valid).
Rational emap_axiom_residual(const FinAlgebra& p, const FinAlgebra& a, const Entwining& psi,
                             const EMap& e);

// a |> p = mult (id (x) e) Psi(a (x) p); validates the axiom first
// (EMapInvalid) and the module axioms of the result.
AlgebraAction induced_action(const FinAlgebra& p, const FinAlgebra& a, const Entwining& psi,
                             const EMap& e);

// Fixed subalgebra M = {m : a |> m = e(a) m} = {m : a |> (pm) = (a |> p) m},
// both characterizations computed and compared (CharacterizationMismatch).
struct FixedSubalgebra {
    FinAlgebra algebra;
    RatMatrix basis;  // dimP x dimM embedding
};

FixedSubalgebra fixed_subalgebra(const FinAlgebra& p, const FinAlgebra& a,
                                 const AlgebraAction& action, const EMap& e);

struct GaloisReport {
    bool galois = false;
    bool ver_surjective = false;
    bool kernel_matches = false;
    int dim_omega1_p = 0;
    int dim_horizontal = 0;   // dim P Omega^1(M) P
    int dim_ker_ver = 0;
    int rank_ver = 0;
    int expected_rank = 0;    // dimP * (dimA - 1)
    int dim_m = 0;
};

// Exactness of 0 -> P Omega^1(M) P -> Omega^1 P -> P (x) ker eps -> 0 for the
// universal calculus, with ver built from the action (coalgebra-dual form).
GaloisReport galois_check(const FinAlgebra& p, const FinAlgebra& a, const AlgebraAction& action);

// X = P (x)_Psi A with (q (x) a)(p (x) b) = q Psi(a (x) p) b; associativity
// of the result is verified (NonAssociativeResult).
FinAlgebra braided_tensor_product(const FinAlgebra& p, const FinAlgebra& a, const Entwining& psi);

// <a>_p = p* (a |> p); requires a star structure on P.
std::vector<Rational> relative_expectation(const std::vector<Rational>& a,
                                           const std::vector<Rational>& p,
                                           const FinAlgebra& alg_p, const AlgebraAction& action);

}  // namespace fingeo
