#pragma once

#include "fingeo/group.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fingeo {

// First-order differential calculus on a finite set: an edge set
// E inside Sigma x Sigma minus the diagonal. One-forms live on edges,
// elements of Omega^1 (x)_M Omega^1 on composable edge pairs (triples).
struct EdgeCalculusData {
    int npoints = 0;
    std::vector<std::string> point_names;
    std::vector<std::pair<int, int>> edges;       // lexicographic
    std::vector<std::vector<int>> edge_index;     // [x][y] -> edge idx or -1
    std::vector<std::vector<int>> fibers;         // F_x = {y : (x,y) in E}
    std::vector<std::vector<int>> back_fibers;    // {x : (x,z) in E}
    bool fibered = false;
    int fiber_size = 0;

    std::vector<std::array<int, 3>> triples;      // F, lexicographic
    std::vector<std::vector<int>> triple_start;   // [x][y] -> first triple idx
    // pairs (x,z) with nonempty F_{x,z} = {y : (x,y,z) in F}
    struct PairFiber {
        int x = 0, z = 0;
        std::vector<int> mids;
    };
    std::vector<PairFiber> pair_fibers;           // lexicographic by (x,z)
    std::vector<std::vector<int>> pair_index;     // [x][z] -> pair fiber idx or -1

    // set when built from a group and Ad-stable class
    GroupPtr group;
    std::optional<AdStableClass> cls;

    int edge(int x, int y) const { return edge_index[x][y]; }
    int triple(int x, int y, int z) const;        // -1 when not in F
    bool is_group_calculus() const { return group != nullptr; }
};

using Calculus = std::shared_ptr<const EdgeCalculusData>;

// Same set and same edge set; independently built copies compare equal.
bool same_calculus(const Calculus& a, const Calculus& b);

Calculus make_edge_calculus(int npoints, std::vector<std::pair<int, int>> edges,
                            std::vector<std::string> names = {});

// E = {(x,y) : x^-1 y in C}; always fibered with fiber size |C|.
Calculus group_calculus(GroupPtr g, const AdStableClass& cls);

struct Function {
    Calculus calc;
    std::vector<Rational> values;  // per point
};

struct OneForm {
    Calculus calc;
    std::vector<Rational> comp;  // per edge

    Rational at(int x, int y) const {  // 0 off the edge set
        int e = calc->edge(x, y);
        return e < 0 ? Rational(0) : comp[e];
    }
};

struct TensorSquare {
    Calculus calc;
    std::vector<Rational> comp;  // per triple
};

// Omega^2 data: per pair fiber (x,z) a surjection matrix p (rows indexed by
// y in F_{x,z}, columns by the fiber basis of V_{x,z}) and optionally a lift
// i with the reverse shape. proper means p o i == id was verified.
struct WedgeStructureData {
    Calculus calc;
    struct Fiber {
        int dim = 0;
        RatMatrix p;                    // mids x dim
        std::optional<RatMatrix> lift;  // dim x mids
        bool proper = false;
    };
    std::vector<Fiber> fibers;          // aligned with calc->pair_fibers
    std::vector<int> offsets;           // component offsets per pair fiber
    int total_dim = 0;
    bool has_lift = false;
};

using WedgePtr = std::shared_ptr<const WedgeStructureData>;

struct TwoForm {
    WedgePtr wedge;
    std::vector<Rational> comp;  // offsets[pf] + alpha

    bool is_zero() const;
    Rational max_abs() const;
};

// Validates surjectivity of every p and the zero-column-sum condition on
// fibers with (x,z) not an edge, x != z (the d^2 = 0 requirement); when
// lifts are present checks p o i == id and sets the proper flags.
WedgePtr make_wedge_structure(Calculus calc, std::vector<WedgeStructureData::Fiber> fibers);

// Bicovariant braiding on invariant generators: psi(a,b) = (a b a^-1, a).
std::pair<int, int> braiding(const FiniteGroup& g, int a, int b);

// Woronowicz Omega^2 for a group calculus: per product sector the fiber is
// span{e_a (x) e_b : ab = q} / ker(id - Psi), with the induced id - Psi lift
// installed (flagged non-proper unless p o i happens to be id).
WedgePtr woronowicz_wedge(GroupPtr g, const AdStableClass& cls);

// Replaces the lift by the minimal-norm right inverse of p on every fiber,
// computed exactly; the result is proper (p o i == id) and i o p is the
// orthogonal projection onto the row space of p.
WedgePtr proper_lift(const WedgePtr& w);

Function make_function(Calculus c, std::vector<Rational> values);
Function delta_function(Calculus c, int point);

// Group-calculus partial derivatives (del^a f)(x) = f(xa) - f(x), one
// Function per class member; these are the Maurer-Cartan bein components
// of df.
std::vector<Function> partial_derivatives(const Function& f);

OneForm d0(const Function& f);
OneForm mult_left(const Function& f, const OneForm& a);   // (f.a)_{x,y} = f_x a_{x,y}
OneForm mult_right(const OneForm& a, const Function& f);  // (a.f)_{x,y} = a_{x,y} f_y

TensorSquare outer(const OneForm& a, const OneForm& b);

TwoForm wedge(const TensorSquare& t, const WedgePtr& w);
TwoForm d1(const OneForm& a, const WedgePtr& w);

// Universal calculus: dm = 1 (x) m - m (x) 1, supported on all x != y.
struct UniversalOneForm {
    int npoints = 0;
    std::vector<std::vector<Rational>> comp;  // [x][y], diagonal zero
};
UniversalOneForm universal_d(const std::vector<Rational>& m);

// Restriction of a universal form to the calculus edge set (the quotient by
// the subbimodule N_M that defines the calculus).
OneForm quotient_to_calculus(const UniversalOneForm& u, Calculus c);

// Degree-1 Connes construction for the diagonal algebra on a finite set:
// keeps edge (x,y), x != y, iff the (x,y) block of the operator is nonzero.
Calculus connes_calculus(int npoints, const RatMatrix& dirac, int w_dim,
                         std::vector<std::string> names = {});

}  // namespace fingeo
