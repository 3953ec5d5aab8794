#pragma once

#include "fingeo/geometry.hpp"
#include "fingeo/polysolve.hpp"

#include <string>
#include <vector>

namespace fingeo {

// Exact linear system in the connection unknowns A_{a,x,y}: the stacked
// vanishing conditions of torsion and cotorsion. Column (a,x,y) maps to
// member_index * |E| + edge_index.
struct LinearSystem {
    AdStableClass cls;
    Calculus calc;
    WedgePtr wedge;
    RatMatrix mat;
    std::vector<Rational> rhs;

    struct RowTag {
        bool cotorsion = false;
        int i = 0;           // bein index
        int pair_fiber = 0;  // index into calc->pair_fibers
        int alpha = 0;
    };
    std::vector<RowTag> tags;

    int ncols() const { return cls.size() * static_cast<int>(calc->edges.size()); }
    int col(int member_idx, int edge_idx) const {
        return member_idx * static_cast<int>(calc->edges.size()) + edge_idx;
    }
    std::string row_label(std::size_t row) const;
};

LinearSystem assemble(const Frame& frame, const WedgePtr& w, const TauMatrices& tau);

struct SolutionSpace {
    bool feasible = false;
    std::vector<Rational> particular;
    RatMatrix null_basis;  // columns
    int dim = 0;
    std::vector<Rational> infeasibility_certificate;
};

SolutionSpace solve(const LinearSystem& sys);

Connection connection_from_vector(const AdStableClass& cls, Calculus calc,
                                  const std::vector<Rational>& vec);
std::vector<Rational> vector_from_connection(const Connection& a);

struct ConnectionDiagnostics {
    Rational torsion_max = Rational(0);
    Rational cotorsion_max = Rational(0);
    Rational regularity_max = Rational(0);
    std::string worst_torsion_row;
    std::string worst_regularity_slot;
    bool torsion_free() const { return torsion_max == 0; }
    bool cotorsion_free() const { return cotorsion_max == 0; }
    bool regular() const { return regularity_max == 0; }
    bool levi_civita() const { return torsion_free() && cotorsion_free() && regular(); }
};

ConnectionDiagnostics verify_connection(const Connection& a, const Frame& frame,
                                        const WedgePtr& w, const TauMatrices& tau);

struct LeviCivitaReport {
    enum class Verdict {
        Unique,          // exactly one regular solution, exhaustively
        Multiple,        // several isolated regular solutions
        RegularFamily,   // a positive-dimensional family is regular
        NoneFound,       // no regular solution (exhaustive within rational points)
        Infeasible,      // the linear system itself has no solution
        Incomplete,      // quadratic stage could not be resolved exactly
    };
    Verdict verdict = Verdict::NoneFound;
    SolutionSpace linear;
    int linear_dim = 0;
    int quadratic_constraints = 0;  // nonzero regularity polynomials
    std::vector<Connection> regular_solutions;
    std::vector<ConnectionDiagnostics> diagnostics;  // aligned with solutions
    int family_dim = 0;                              // for RegularFamily
    bool irrational_candidates = false;
    std::vector<std::vector<double>> numeric_only;   // converged but not rationalized
    bool used_numeric_stage = false;
    std::string notes;
};

// Solves torsion = cotorsion = 0 exactly, then filters by the quadratic
// regularity condition: exact elimination for small solution spaces, a
// seeded numeric multistart (with exact re-verification of rationalized
// candidates) for larger ones.
LeviCivitaReport levi_civita(const Frame& frame, const WedgePtr& w, const TauMatrices& tau);

}  // namespace fingeo
