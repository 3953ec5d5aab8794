#pragma once

#include "fingeo/error.hpp"
#include "fingeo/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fingeo {

// Finite group as a validated multiplication table. Element ids are dense
// integers; names is the display table used everywhere in reports.
struct FiniteGroup {
    std::vector<std::string> names;
    std::vector<std::vector<int>> mul;  // mul[x][y]
    std::vector<int> inv;
    int identity = 0;

    int order() const { return static_cast<int>(names.size()); }
    int conjugate(int g, int a) const { return mul[mul[g][a]][inv[g]]; }  // g a g^-1
    bool same_as(const FiniteGroup& other) const { return mul == other.mul; }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Validates the table (associativity, two-sided identity, inverses) and
// throws NonAssociative / NoIdentity / NoInverse naming the offender.
GroupPtr build_group(std::vector<std::string> names, std::vector<std::vector<int>> table);

// Presets: "z2", "z3", "zn:<n>", "s3", "d4".
GroupPtr preset_group(const std::string& name);

// Ad-stable subset C of G \ {e}; reducible unions of conjugacy classes are
// allowed, only Ad-stability and e not in C are enforced.
struct AdStableClass {
    GroupPtr group;
    std::vector<int> members;  // sorted element ids

    int size() const { return static_cast<int>(members.size()); }
    int index_of(int elem) const;  // -1 when absent
    bool contains(int elem) const { return index_of(elem) >= 0; }
};

AdStableClass make_class(GroupPtr g, std::vector<int> members);

// Partition of G \ {e} into conjugacy classes, ordered by smallest member.
std::vector<AdStableClass> conjugacy_classes(GroupPtr g);

struct Representation {
    GroupPtr group;
    int dim = 0;
    std::vector<RatMatrix> matrices;  // indexed by element id

    const RatMatrix& at(int g) const { return matrices[g]; }
};

// rho(e) = id and rho(g)rho(h) = rho(gh) are verified.
Representation make_representation(GroupPtr g, int dim, std::vector<RatMatrix> mats);

Representation trivial_rep(GroupPtr g, int dim = 1);

// Left regular representation on the group algebra basis {e_g}.
Representation regular_rep(GroupPtr g);

// G acting on span{e_a : a in C} by g . e_a = e_{g a g^-1}.
Representation coadjoint_rep(const AdStableClass& cls);

// tau^a = rho(a^-1) - id for a in C; the structure matrices entering every
// covariant derivative, torsion, cotorsion and Riemann formula.
struct TauMatrices {
    AdStableClass cls;
    Representation rep;
    std::vector<RatMatrix> tau;  // aligned with cls.members

    const RatMatrix& at_member(int member_idx) const { return tau[member_idx]; }
};

TauMatrices tau_matrices(const AdStableClass& cls, const Representation& rep);

}  // namespace fingeo
