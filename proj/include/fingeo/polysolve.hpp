#pragma once

#include "fingeo/linalg.hpp"
#include "fingeo/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace fingeo {

// Sparse multivariate polynomial over the rationals in a fixed number of
// variables. Small systems only: this backs the quadratic regularity stage
// of the connection solver.
class MPoly {
public:
    MPoly() : nvars_(0) {}
    explicit MPoly(int nvars) : nvars_(nvars) {}

    static MPoly constant(int nvars, const Rational& c);
    static MPoly variable(int nvars, int idx);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;
    int degree_in(int var) const;

    void add_term(const std::vector<int>& exps, const Rational& c);
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;

    Rational eval(const std::vector<Rational>& point) const;
    double eval_double(const std::vector<double>& point) const;
    std::vector<double> gradient_double(const std::vector<double>& point) const;

    // coefficient of var^k, as a polynomial with exponent 0 in var
    MPoly coeff_of(int var, int k) const;

    // substitute images[v] for variable v (images share a variable space)
    MPoly compose(const std::vector<MPoly>& images) const;

    // dense coefficients when the polynomial is univariate in `var`
    std::vector<Rational> univariate(int var) const;

    std::string str() const;

private:
    int nvars_;
    std::map<std::vector<int>, Rational> terms_;
};

// Sylvester resultant eliminating `var`.
MPoly resultant(const MPoly& f, const MPoly& g, int var);

std::vector<Rational> poly_gcd(std::vector<Rational> a, std::vector<Rational> b);

// All rational roots of a univariate polynomial (exactly verified);
// irrational_seen reports whether other real roots were observed.
struct RootResult {
    std::vector<Rational> rational_roots;
    bool irrational_seen = false;
};
RootResult rational_roots(const std::vector<Rational>& coeffs);

struct SystemSolveResult {
    enum class Status {
        EntireSpace,  // the solution set is the affine family reported below
        Solved,       // rational_points is the complete rational solution set
        Incomplete,   // degenerate elimination; rational_points are verified but may be partial
    };
    Status status = Status::Solved;
    std::vector<std::vector<Rational>> rational_points;
    bool irrational_seen = false;
    std::string note;
    // populated when status == EntireSpace: solutions = particular + span(basis columns)
    std::vector<Rational> family_particular;
    RatMatrix family_basis;
};

// Exact solve of a small polynomial system (intended: quadratics in <= 3
// variables; elimination products of higher degree are handled). Every
// returned point is verified against all input polynomials.
SystemSolveResult solve_small_system(const std::vector<MPoly>& polys, int nvars);

// Deterministic seeded Gauss-Newton multistart for larger systems; returns
// converged candidate points (residual below tol), deduplicated.
std::vector<std::vector<double>> newton_multistart(const std::vector<MPoly>& polys, int nvars,
                                                   int starts, double tol);

}  // namespace fingeo
