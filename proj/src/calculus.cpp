#include "fingeo/calculus.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fingeo {

int EdgeCalculusData::triple(int x, int y, int z) const {
    int start = triple_start[x][y];
    if (start < 0) return -1;
    for (int t = start; t < static_cast<int>(triples.size()) && triples[t][0] == x &&
                        triples[t][1] == y;
         ++t)
        if (triples[t][2] == z) return t;
    return -1;
}

namespace {

void index_calculus(EdgeCalculusData& c) {
    const int n = c.npoints;
    std::sort(c.edges.begin(), c.edges.end());
    c.edges.erase(std::unique(c.edges.begin(), c.edges.end()), c.edges.end());
    c.edge_index.assign(n, std::vector<int>(n, -1));
    c.fibers.assign(n, {});
    c.back_fibers.assign(n, {});
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
        auto [x, y] = c.edges[k];
        if (x == y) throw Error(Errc::ConfigInvalid, "diagonal edge (" + std::to_string(x) + ")");
        if (x < 0 || y < 0 || x >= n || y >= n)
            throw Error(Errc::ConfigInvalid, "edge endpoint out of range");
        c.edge_index[x][y] = static_cast<int>(k);
        c.fibers[x].push_back(y);
        c.back_fibers[y].push_back(x);
    }
    c.fibered = !c.edges.empty();
    c.fiber_size = c.fibers.empty() ? 0 : static_cast<int>(c.fibers[0].size());
    for (int x = 0; x < n; ++x)
        if (static_cast<int>(c.fibers[x].size()) != c.fiber_size) c.fibered = false;

    c.triple_start.assign(n, std::vector<int>(n, -1));
    for (auto [x, y] : c.edges) {
        c.triple_start[x][y] = static_cast<int>(c.triples.size());
        for (int z : c.fibers[y]) c.triples.push_back({x, y, z});
        if (c.fibers[y].empty()) c.triple_start[x][y] = -1;
    }
    std::map<std::pair<int, int>, std::vector<int>> mids;
    for (auto [x, y] : c.edges)
        for (int z : c.fibers[y]) mids[{x, z}].push_back(y);
    c.pair_index.assign(n, std::vector<int>(n, -1));
    for (auto& [xz, ys] : mids) {
        std::sort(ys.begin(), ys.end());
        c.pair_index[xz.first][xz.second] = static_cast<int>(c.pair_fibers.size());
        c.pair_fibers.push_back({xz.first, xz.second, ys});
    }
    if (c.point_names.empty())
        for (int x = 0; x < n; ++x) c.point_names.push_back(std::to_string(x));
}

}  // namespace

Calculus make_edge_calculus(int npoints, std::vector<std::pair<int, int>> edges,
                            std::vector<std::string> names) {
    auto c = std::make_shared<EdgeCalculusData>();
    c->npoints = npoints;
    c->point_names = std::move(names);
    c->edges = std::move(edges);
    index_calculus(*c);
    return c;
}

Calculus group_calculus(GroupPtr g, const AdStableClass& cls) {
    if (!g->same_as(*cls.group)) throw Error(Errc::GroupMismatch, "class is not on this group");
    auto c = std::make_shared<EdgeCalculusData>();
    c->npoints = g->order();
    c->point_names = g->names;
    for (int x = 0; x < g->order(); ++x)
        for (int a : cls.members) c->edges.emplace_back(x, g->mul[x][a]);
    c->group = g;
    c->cls = cls;
    index_calculus(*c);
    return c;
}

bool TwoForm::is_zero() const {
    for (const auto& v : comp)
        if (v != 0) return false;
    return true;
}

Rational TwoForm::max_abs() const {
    Rational m(0);
    for (const auto& v : comp) m = std::max(m, Rational(abs(v)));
    return m;
}

WedgePtr make_wedge_structure(Calculus calc, std::vector<WedgeStructureData::Fiber> fibers) {
    if (fibers.size() != calc->pair_fibers.size())
        throw Error(Errc::ConfigInvalid, "wedge fiber count mismatch");
    auto w = std::make_shared<WedgeStructureData>();
    w->calc = calc;
    w->fibers = std::move(fibers);
    w->has_lift = true;
    int off = 0;
    for (std::size_t k = 0; k < w->fibers.size(); ++k) {
        auto& f = w->fibers[k];
        const auto& pf = calc->pair_fibers[k];
        if (f.p.rows() != pf.mids.size() || f.p.cols() != static_cast<std::size_t>(f.dim))
            throw Error(Errc::ConfigInvalid, "wedge surjection shape mismatch");
        if (static_cast<int>(rank(f.p)) != f.dim)
            throw Error(Errc::ConfigInvalid, "wedge map not surjective at (" +
                                                 calc->point_names[pf.x] + "," +
                                                 calc->point_names[pf.z] + ")");
        if (calc->edge(pf.x, pf.z) < 0 && pf.x != pf.z) {
            for (int a = 0; a < f.dim; ++a) {
                Rational s(0);
                for (std::size_t r = 0; r < pf.mids.size(); ++r) s += f.p(r, a);
                if (s != 0)
                    throw Error(Errc::ConfigInvalid,
                                "wedge zero-sum condition fails at (" + calc->point_names[pf.x] +
                                    "," + calc->point_names[pf.z] + ")");
            }
        }
        if (f.lift) {
            if (f.lift->rows() != static_cast<std::size_t>(f.dim) ||
                f.lift->cols() != pf.mids.size())
                throw Error(Errc::ConfigInvalid, "lift shape mismatch");
            f.proper = (*f.lift * f.p) == RatMatrix::identity(f.dim);
        } else {
            w->has_lift = false;
            f.proper = false;
        }
        w->offsets.push_back(off);
        off += f.dim;
    }
    w->total_dim = off;
    return w;
}

std::pair<int, int> braiding(const FiniteGroup& g, int a, int b) {
    return {g.conjugate(a, b), a};
}

WedgePtr woronowicz_wedge(GroupPtr g, const AdStableClass& cls) {
    if (!g->same_as(*cls.group)) throw Error(Errc::GroupMismatch, "class is not on this group");
    auto calc = group_calculus(g, cls);
    const auto& mem = cls.members;

    // per product sector q = a b: Psi permutes the pairs (a,b) with ab = q
    struct Sector {
        std::vector<std::pair<int, int>> pairs;  // (a,b), ordered
        RatMatrix p;                             // |pairs| x dim quotient map
        RatMatrix lift;                          // dim x |pairs|, id - Psi on classes
        int dim = 0;
    };
    std::map<int, Sector> sectors;
    for (int a : mem)
        for (int b : mem) sectors[g->mul[a][b]].pairs.emplace_back(a, b);

    for (auto& [q, sec] : sectors) {
        const int m = static_cast<int>(sec.pairs.size());
        auto pair_idx = [&](std::pair<int, int> ab) {
            auto it = std::lower_bound(sec.pairs.begin(), sec.pairs.end(), ab);
            return static_cast<int>(it - sec.pairs.begin());
        };
        RatMatrix psi(m, m);
        for (int k = 0; k < m; ++k)
            psi(pair_idx(braiding(*g, sec.pairs[k].first, sec.pairs[k].second)), k) = 1;
        RatMatrix one_minus_psi = RatMatrix::identity(m) - psi;
        // echelon basis of image(id - Psi): rref of the transpose, nonzero rows
        Rref r = rref(one_minus_psi.transpose());
        sec.dim = static_cast<int>(r.rank());
        RatMatrix image_basis(m, sec.dim);  // columns
        for (int c = 0; c < sec.dim; ++c)
            for (int row = 0; row < m; ++row) image_basis(row, c) = r.mat(c, row);
        RatMatrix kernel_basis = null_space(one_minus_psi);
        // coordinates of each delta along the image part of ker (+) image
        RatMatrix decomp = hcat(kernel_basis, image_basis);
        auto dinv = inverse(decomp);
        if (!dinv) throw Error(Errc::Internal, "ker/image decomposition is singular");
        sec.p = RatMatrix(m, sec.dim);
        const int kdim = static_cast<int>(kernel_basis.cols());
        for (int y = 0; y < m; ++y)
            for (int a = 0; a < sec.dim; ++a) sec.p(y, a) = (*dinv)(kdim + a, y);
        // Woronowicz lift: the class of image_basis column c maps to
        // (id - Psi) applied to it
        sec.lift = RatMatrix(sec.dim, m);
        for (int c = 0; c < sec.dim; ++c) {
            std::vector<Rational> col(m);
            for (int row = 0; row < m; ++row) col[row] = image_basis(row, c);
            auto img = one_minus_psi.apply(col);
            for (int row = 0; row < m; ++row) sec.lift(c, row) = img[row];
        }
    }

    std::vector<WedgeStructureData::Fiber> fibers(calc->pair_fibers.size());
    for (std::size_t k = 0; k < calc->pair_fibers.size(); ++k) {
        const auto& pf = calc->pair_fibers[k];
        int q = g->mul[g->inv[pf.x]][pf.z];
        const Sector& sec = sectors.at(q);
        auto& f = fibers[k];
        f.dim = sec.dim;
        f.p = RatMatrix(pf.mids.size(), sec.dim);
        f.lift = RatMatrix(sec.dim, pf.mids.size());
        for (std::size_t row = 0; row < pf.mids.size(); ++row) {
            int y = pf.mids[row];
            std::pair<int, int> ab = {g->mul[g->inv[pf.x]][y], g->mul[g->inv[y]][pf.z]};
            auto it = std::lower_bound(sec.pairs.begin(), sec.pairs.end(), ab);
            int pk = static_cast<int>(it - sec.pairs.begin());
            for (int a = 0; a < sec.dim; ++a) {
                f.p(row, a) = sec.p(pk, a);
                (*f.lift)(a, row) = sec.lift(a, pk);
            }
        }
    }
    return make_wedge_structure(calc, std::move(fibers));
}

WedgePtr proper_lift(const WedgePtr& w) {
    std::vector<WedgeStructureData::Fiber> fibers = w->fibers;
    for (auto& f : fibers) {
        if (f.dim == 0) {
            f.lift = RatMatrix(0, f.p.rows());
            continue;
        }
        RatMatrix pt = f.p.transpose();
        auto gram_inv = inverse(pt * f.p);
        if (!gram_inv) throw Error(Errc::Internal, "surjection without full column rank");
        f.lift = *gram_inv * pt;  // minimal-norm right inverse
    }
    return make_wedge_structure(w->calc, std::move(fibers));
}

Function make_function(Calculus c, std::vector<Rational> values) {
    if (static_cast<int>(values.size()) != c->npoints)
        throw Error(Errc::DimensionMismatch, "function must be total over the set");
    return Function{std::move(c), std::move(values)};
}

Function delta_function(Calculus c, int point) {
    std::vector<Rational> v(c->npoints, Rational(0));
    v[point] = 1;
    return Function{std::move(c), std::move(v)};
}

bool same_calculus(const Calculus& a, const Calculus& b) {
    if (a.get() == b.get()) return true;
    return a && b && a->npoints == b->npoints && a->edges == b->edges;
}

static void require_same(const Calculus& a, const Calculus& b) {
    if (!same_calculus(a, b))
        throw Error(Errc::CalculusMismatch, "values on different calculi");
}

std::vector<Function> partial_derivatives(const Function& f) {
    const auto& calc = *f.calc;
    if (!calc.is_group_calculus())
        throw Error(Errc::ConfigInvalid, "partial derivatives need a group calculus");
    const auto& g = *calc.group;
    std::vector<Function> out;
    for (int a : calc.cls->members) {
        std::vector<Rational> v(calc.npoints);
        for (int x = 0; x < calc.npoints; ++x) v[x] = f.values[g.mul[x][a]] - f.values[x];
        out.push_back(Function{f.calc, std::move(v)});
    }
    return out;
}

OneForm d0(const Function& f) {
    OneForm a{f.calc, std::vector<Rational>(f.calc->edges.size())};
    for (std::size_t k = 0; k < f.calc->edges.size(); ++k) {
        auto [x, y] = f.calc->edges[k];
        a.comp[k] = f.values[y] - f.values[x];
    }
    return a;
}

OneForm mult_left(const Function& f, const OneForm& a) {
    require_same(f.calc, a.calc);
    OneForm out{a.calc, a.comp};
    for (std::size_t k = 0; k < a.calc->edges.size(); ++k)
        out.comp[k] *= f.values[a.calc->edges[k].first];
    return out;
}

OneForm mult_right(const OneForm& a, const Function& f) {
    require_same(f.calc, a.calc);
    OneForm out{a.calc, a.comp};
    for (std::size_t k = 0; k < a.calc->edges.size(); ++k)
        out.comp[k] *= f.values[a.calc->edges[k].second];
    return out;
}

TensorSquare outer(const OneForm& a, const OneForm& b) {
    require_same(a.calc, b.calc);
    TensorSquare t{a.calc, std::vector<Rational>(a.calc->triples.size())};
    for (std::size_t k = 0; k < a.calc->triples.size(); ++k) {
        auto [x, y, z] = a.calc->triples[k];
        t.comp[k] = a.comp[a.calc->edge(x, y)] * b.comp[b.calc->edge(y, z)];
    }
    return t;
}

TwoForm wedge(const TensorSquare& t, const WedgePtr& w) {
    require_same(t.calc, w->calc);
    TwoForm out{w, std::vector<Rational>(w->total_dim)};
    for (std::size_t k = 0; k < w->calc->pair_fibers.size(); ++k) {
        const auto& pf = w->calc->pair_fibers[k];
        const auto& f = w->fibers[k];
        for (int a = 0; a < f.dim; ++a) {
            Rational s(0);
            for (std::size_t r = 0; r < pf.mids.size(); ++r)
                s += t.comp[t.calc->triple(pf.x, pf.mids[r], pf.z)] * f.p(r, a);
            out.comp[w->offsets[k] + a] = s;
        }
    }
    return out;
}

TwoForm d1(const OneForm& a, const WedgePtr& w) {
    require_same(a.calc, w->calc);
    TwoForm out{w, std::vector<Rational>(w->total_dim)};
    for (std::size_t k = 0; k < w->calc->pair_fibers.size(); ++k) {
        const auto& pf = w->calc->pair_fibers[k];
        const auto& f = w->fibers[k];
        Rational axz = a.at(pf.x, pf.z);
        for (int al = 0; al < f.dim; ++al) {
            Rational s(0);
            for (std::size_t r = 0; r < pf.mids.size(); ++r) {
                int y = pf.mids[r];
                s += (a.comp[a.calc->edge(pf.x, y)] + a.comp[a.calc->edge(y, pf.z)] - axz) *
                     f.p(r, al);
            }
            out.comp[w->offsets[k] + al] = s;
        }
    }
    return out;
}

UniversalOneForm universal_d(const std::vector<Rational>& m) {
    UniversalOneForm u;
    u.npoints = static_cast<int>(m.size());
    u.comp.assign(u.npoints, std::vector<Rational>(u.npoints, Rational(0)));
    for (int x = 0; x < u.npoints; ++x)
        for (int y = 0; y < u.npoints; ++y)
            if (x != y) u.comp[x][y] = m[y] - m[x];
    return u;
}

OneForm quotient_to_calculus(const UniversalOneForm& u, Calculus c) {
    if (u.npoints != c->npoints) throw Error(Errc::DimensionMismatch, "point count mismatch");
    OneForm a{c, std::vector<Rational>(c->edges.size())};
    for (std::size_t k = 0; k < c->edges.size(); ++k)
        a.comp[k] = u.comp[c->edges[k].first][c->edges[k].second];
    return a;
}

Calculus connes_calculus(int npoints, const RatMatrix& dirac, int w_dim,
                         std::vector<std::string> names) {
    if (w_dim < 1) throw Error(Errc::DimensionMismatch, "w_dim must be positive");
    const std::size_t n = static_cast<std::size_t>(npoints) * w_dim;
    if (dirac.rows() != n || dirac.cols() != n)
        throw Error(Errc::DimensionMismatch, "operator must act on |Sigma| * w_dim dimensions");
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < npoints; ++x)
        for (int y = 0; y < npoints; ++y) {
            if (x == y) continue;
            // delta_x [D, delta_y] = the (x,y) block of D when x != y
            bool nonzero = false;
            for (int r = 0; r < w_dim && !nonzero; ++r)
                for (int c = 0; c < w_dim && !nonzero; ++c)
                    nonzero = dirac(x * w_dim + r, y * w_dim + c) != 0;
            if (nonzero) edges.emplace_back(x, y);
        }
    return make_edge_calculus(npoints, std::move(edges), std::move(names));
}

}  // namespace fingeo
