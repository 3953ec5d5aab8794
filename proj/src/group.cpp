#include "fingeo/group.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace fingeo {

GroupPtr build_group(std::vector<std::string> names, std::vector<std::vector<int>> table) {
    const int n = static_cast<int>(names.size());
    if (static_cast<int>(table.size()) != n)
        throw Error(Errc::ConfigInvalid, "table rows != element count");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            throw Error(Errc::ConfigInvalid, "table is not total");
        for (int v : row)
            if (v < 0 || v >= n) throw Error(Errc::ConfigInvalid, "table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw Error(Errc::NonAssociative,
                                "(" + names[a] + "," + names[b] + "," + names[c] + ")");
    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0) throw Error(Errc::NoIdentity, "no two-sided identity");
    std::vector<int> inv(n, -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (table[x][y] == identity && table[y][x] == identity) {
                inv[x] = y;
                break;
            }
        if (inv[x] < 0) throw Error(Errc::NoInverse, names[x]);
    }
    auto g = std::make_shared<FiniteGroup>();
    g->names = std::move(names);
    g->mul = std::move(table);
    g->inv = std::move(inv);
    g->identity = identity;
    return g;
}

namespace {

// permutations compose as (fg)(x) = f(g(x))
std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> h(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) h[x] = f[g[x]];
    return h;
}

GroupPtr permutation_group(const std::vector<std::pair<std::string, std::vector<int>>>& elems) {
    const int n = static_cast<int>(elems.size());
    std::vector<std::string> names(n);
    std::vector<std::vector<int>> table(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) names[i] = elems[i].first;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto prod = compose(elems[i].second, elems[j].second);
            for (int k = 0; k < n; ++k)
                if (elems[k].second == prod) {
                    table[i][j] = k;
                    break;
                }
            if (table[i][j] < 0) throw Error(Errc::Internal, "permutation set not closed");
        }
    return build_group(std::move(names), std::move(table));
}

GroupPtr cyclic_group(int n) {
    if (n < 1) throw Error(Errc::ConfigInvalid, "zn order must be >= 1");
    std::vector<std::string> names(n);
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        names[i] = std::to_string(i);
        for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    }
    return build_group(std::move(names), std::move(table));
}

}  // namespace

GroupPtr preset_group(const std::string& name) {
    if (name == "z2") return cyclic_group(2);
    if (name == "z3") return cyclic_group(3);
    if (name.rfind("zn:", 0) == 0) return cyclic_group(std::stoi(name.substr(3)));
    if (name == "s3") {
        // canonical ordering: e, transpositions, 3-cycles
        return permutation_group({
            {"e", {0, 1, 2}},
            {"(01)", {1, 0, 2}},
            {"(02)", {2, 1, 0}},
            {"(12)", {0, 2, 1}},
            {"(012)", {1, 2, 0}},
            {"(021)", {2, 0, 1}},
        });
    }
    if (name == "d4") {
        // square symmetries on corners 0..3; r = quarter turn, s = diagonal flip
        std::vector<int> r = {1, 2, 3, 0};
        std::vector<int> s = {0, 3, 2, 1};
        auto r2 = compose(r, r);
        auto r3 = compose(r2, r);
        return permutation_group({
            {"e", {0, 1, 2, 3}},
            {"r", r},
            {"r2", r2},
            {"r3", r3},
            {"s", s},
            {"sr", compose(s, r)},
            {"sr2", compose(s, r2)},
            {"sr3", compose(s, r3)},
        });
    }
    throw Error(Errc::ConfigInvalid, "unknown group preset '" + name + "'");
}

int AdStableClass::index_of(int elem) const {
    auto it = std::lower_bound(members.begin(), members.end(), elem);
    if (it == members.end() || *it != elem) return -1;
    return static_cast<int>(it - members.begin());
}

AdStableClass make_class(GroupPtr g, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) throw Error(Errc::ConfigInvalid, "class must be nonempty");
    for (int a : members) {
        if (a < 0 || a >= g->order()) throw Error(Errc::ConfigInvalid, "class member out of range");
        if (a == g->identity)
            throw Error(Errc::ConfigInvalid, "class contains the group identity");
    }
    std::set<int> mem(members.begin(), members.end());
    for (int a : members)
        for (int x = 0; x < g->order(); ++x)
            if (!mem.count(g->conjugate(x, a)))
                throw Error(Errc::ConfigInvalid,
                            "not Ad-stable: " + g->names[x] + " conjugates " + g->names[a] +
                                " out of the class");
    return AdStableClass{std::move(g), std::move(members)};
}

std::vector<AdStableClass> conjugacy_classes(GroupPtr g) {
    std::vector<bool> seen(g->order(), false);
    seen[g->identity] = true;
    std::vector<AdStableClass> out;
    for (int a = 0; a < g->order(); ++a) {
        if (seen[a]) continue;
        std::set<int> orbit;
        for (int x = 0; x < g->order(); ++x) orbit.insert(g->conjugate(x, a));
        for (int b : orbit) seen[b] = true;
        out.push_back(make_class(g, std::vector<int>(orbit.begin(), orbit.end())));
    }
    return out;
}

Representation make_representation(GroupPtr g, int dim, std::vector<RatMatrix> mats) {
    if (static_cast<int>(mats.size()) != g->order())
        throw Error(Errc::ConfigInvalid, "representation must define every element");
    for (const auto& m : mats)
        if (m.rows() != static_cast<std::size_t>(dim) || m.cols() != static_cast<std::size_t>(dim))
            throw Error(Errc::DimensionMismatch, "representation matrix shape");
    if (!(mats[g->identity] == RatMatrix::identity(dim)))
        throw Error(Errc::ConfigInvalid, "rho(e) != id");
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b)
            if (!(mats[a] * mats[b] == mats[g->mul[a][b]]))
                throw Error(Errc::ConfigInvalid,
                            "rho(" + g->names[a] + ")rho(" + g->names[b] + ") != rho(product)");
    return Representation{std::move(g), dim, std::move(mats)};
}

Representation trivial_rep(GroupPtr g, int dim) {
    std::vector<RatMatrix> mats(g->order(), RatMatrix::identity(dim));
    return Representation{std::move(g), dim, std::move(mats)};
}

Representation regular_rep(GroupPtr g) {
    const int n = g->order();
    std::vector<RatMatrix> mats(n, RatMatrix(n, n));
    for (int a = 0; a < n; ++a)
        for (int x = 0; x < n; ++x) mats[a](g->mul[a][x], x) = 1;
    return Representation{std::move(g), n, std::move(mats)};
}

Representation coadjoint_rep(const AdStableClass& cls) {
    const auto& g = *cls.group;
    const int d = cls.size();
    std::vector<RatMatrix> mats(g.order(), RatMatrix(d, d));
    for (int x = 0; x < g.order(); ++x)
        for (int j = 0; j < d; ++j) {
            int img = cls.index_of(g.conjugate(x, cls.members[j]));
            if (img < 0) throw Error(Errc::Internal, "coadjoint image left the class");
            mats[x](img, j) = 1;
        }
    return make_representation(cls.group, d, std::move(mats));
}

TauMatrices tau_matrices(const AdStableClass& cls, const Representation& rep) {
    if (!cls.group->same_as(*rep.group))
        throw Error(Errc::GroupMismatch, "class and representation live on different groups");
    std::vector<RatMatrix> tau;
    tau.reserve(cls.members.size());
    const RatMatrix id = RatMatrix::identity(rep.dim);
    for (int a : cls.members) tau.push_back(rep.at(cls.group->inv[a]) - id);
    return TauMatrices{cls, rep, std::move(tau)};
}

}  // namespace fingeo
