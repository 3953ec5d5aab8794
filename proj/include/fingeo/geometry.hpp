#pragma once

#include "fingeo/calculus.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace fingeo {

struct KillingForm {
    RatMatrix eta;      // eta^{ij}
    RatMatrix eta_inv;  // eta_{ij}
};

KillingForm killing_form(RatMatrix eta);          // throws Singular
KillingForm scaled_identity_form(int dim, Rational c);

// V-bein: a representation rho_V of dimension n on a calculus fibered with
// fiber size n, plus the component tensor E_{i,x,y}. The per-x matrices
// [E_{i,x,y}]_{i, y in F_x} are invertible; a cobein additionally has the
// per-z matrices [E*^i_{x,z}]_{i, x} invertible.
struct Frame {
    Calculus calc;
    Representation rep;
    std::vector<std::vector<Rational>> bein;                   // [i][edge]
    std::optional<std::vector<std::vector<Rational>>> cobein;  // [i][edge]

    int dim() const { return rep.dim; }
    Rational e(int i, int edge) const { return bein[i][edge]; }
    Rational estar(int i, int edge) const { return (*cobein)[i][edge]; }

    // per-x bein matrix, rows i, columns enumerate F_x in order
    RatMatrix bein_matrix(int x) const;
};

Frame make_frame(Calculus calc, Representation rep, std::vector<std::vector<Rational>> bein);

// E_{i,x,y} = delta_{s_x(i), y} for a family of bijections s_x : {i} -> F_x,
// supplied as sections[x] = the fiber of x listed in i-order.
Frame bein_from_sections(Calculus calc, Representation rep,
                         const std::vector<std::vector<int>>& sections);

// Group case: E_{i,x,y} = delta_{x i, y} with V the class span carrying the
// coadjoint action; the left-invariant Maurer-Cartan frame.
Frame maurer_cartan(GroupPtr g, const AdStableClass& cls);

// Installs E*^i = eta^{ij} E_j and certifies the per-z invertibility.
Frame cobein_from_eta(Frame frame, const KillingForm& eta);

struct Metric {
    Calculus calc;
    TensorSquare g;  // g_{x,y,z} = E*^i_{x,y} E_{i,y,z}
};

Metric metric(const Frame& frame);  // throws MissingCobein

// wedge(g) and whether it vanishes (the metric symmetry condition).
std::pair<bool, TwoForm> metric_symmetry_check(const Metric& m, const WedgePtr& w);

// Connection components A_{a,x,y}, a in the Ad-stable class, (x,y) in E.
struct Connection {
    AdStableClass cls;
    Calculus calc;
    std::vector<std::vector<Rational>> comp;  // [member idx][edge]
};

Connection zero_connection(const AdStableClass& cls, Calculus calc);
Connection make_connection(AdStableClass cls, Calculus calc,
                           std::vector<std::vector<Rational>> comp);

// A_{a,x,y} = delta_{xa,y} + shift on a group calculus; at shift -1/3 this
// is the s3 Levi-Civita connection.
Connection shifted_delta_connection(const AdStableClass& cls, Calculus calc, Rational shift);

// One-form components in the bein basis: alpha_{x,y} = alpha^i(x) E_{i,x,y};
// result indexed [x][i].
std::vector<std::vector<Rational>> bein_components(const Frame& frame, const OneForm& alpha);
OneForm from_bein_components(const Frame& frame, const std::vector<std::vector<Rational>>& comp);

// Connection bein components A_a^i(x) with A_{a,x,y} = A_a^i(x) E_{i,x,y};
// result indexed [member idx][x][i].
std::vector<std::vector<std::vector<Rational>>> connection_bein_components(const Frame& frame,
                                                                           const Connection& a);

// (nabla alpha)_{x,y,z} = (alpha^i_y - alpha^i_x) E_{i,y,z}
//                         - alpha^i_x A_{a,x,y} E_{j,y,z} tau^a_j_i
TensorSquare covariant_derivative(const OneForm& alpha, const Connection& a, const Frame& frame,
                                  const TauMatrices& tau);

// F_{a,x,alpha,z} = (dA_a) + sum_{cd=a} A_c A_d p - sum_b (A_b A_a + A_a A_b) p
struct CurvatureTensor {
    Connection conn;
    WedgePtr wedge;
    std::vector<TwoForm> comp;  // per class member
};

CurvatureTensor curvature(const Connection& a, const WedgePtr& w);

// R_{x,alpha,z}^i_j = F_{a,x,alpha,z} tau^a_i_j : a 2-form valued operator.
struct RiemannTensor {
    WedgePtr wedge;
    int rep_dim = 0;
    std::vector<RatMatrix> op;  // per two-form slot (offset + alpha): matrix [i][j]
};

RiemannTensor riemann(const CurvatureTensor& f, const TauMatrices& tau);

// R alpha = alpha^i R^j_i (x)_M E_j, an element of Omega^2 (x)_M Omega^1:
// components indexed by a two-form slot at (x, ., z) and an edge out of z.
struct TwoFormOneForm {
    WedgePtr wedge;
    // comp[slot][c] with c enumerating the fiber of the slot's endpoint z
    std::vector<std::vector<Rational>> comp;
};

TwoFormOneForm riemann_apply(const RiemannTensor& r, const Frame& frame, const OneForm& alpha);

// (Dbar ^ e)_i = d E_i + sum_{a,j} A_a E_j p tau^a_j_i, one TwoForm per i.
std::vector<TwoForm> torsion(const Connection& a, const Frame& frame, const WedgePtr& w,
                             const TauMatrices& tau);

// (D ^ e*)^i = d E*^i + sum_{a,j} E*^j A_a p tau^a_i_j.
std::vector<TwoForm> cotorsion(const Connection& a, const Frame& frame, const WedgePtr& w,
                               const TauMatrices& tau);

struct RegularityReport {
    bool regular = true;
    Rational max_abs_residual = Rational(0);
    // worst (q, x, alpha, z) slot, group display names where available
    std::string worst_slot;
};

// sum_{ab=q, y} A_{a,x,y} A_{b,y,z} p^y_alpha = 0 for all q outside C u {e}.
RegularityReport regularity_check(const Connection& a, const WedgePtr& w);

struct RicciResult {
    TensorSquare ricci;
    std::vector<Rational> scalar;  // S(x) = Ricci^{ij}_x eta_{ji}
    bool index_swap = false;       // diagnostic i<->j mode used
};

// Lifted curvature contraction: re-evaluates the curvature with
// pi = p o i in place of p, converts to bein components, and contracts
// Ricci_{x,y,z} = i(F_a)^{ij}_x E_{j,x,y} E_{k,y,z} tau^a_k_i.
// index_swap contracts i(F_a)^{ji} instead (diagnostic only).
RicciResult ricci(const CurvatureTensor& f, const WedgePtr& w, const Frame& frame,
                  const TauMatrices& tau, const KillingForm& eta, bool index_swap = false);

// U(0) gauge theory: A^gamma = gamma^-1 A gamma + gamma^-1 d gamma.
OneForm u0_gauge_transform(const OneForm& a, const Function& gamma);  // throws NotInvertible

// F = dA + A ^ A.
TwoForm u0_curvature(const OneForm& a, const WedgePtr& w);

}  // namespace fingeo
