#include "fingeo/geometry.hpp"

#include <algorithm>

namespace fingeo {

KillingForm killing_form(RatMatrix eta) {
    auto inv = inverse(eta);
    if (!inv) throw Error(Errc::Singular, "eta is not invertible");
    return KillingForm{std::move(eta), std::move(*inv)};
}

KillingForm scaled_identity_form(int dim, Rational c) {
    RatMatrix eta(dim, dim);
    for (int i = 0; i < dim; ++i) eta(i, i) = c;
    return killing_form(std::move(eta));
}

RatMatrix Frame::bein_matrix(int x) const {
    const auto& fib = calc->fibers[x];
    RatMatrix b(dim(), fib.size());
    for (int i = 0; i < dim(); ++i)
        for (std::size_t c = 0; c < fib.size(); ++c) b(i, c) = bein[i][calc->edge(x, fib[c])];
    return b;
}

Frame make_frame(Calculus calc, Representation rep, std::vector<std::vector<Rational>> bein) {
    if (!calc->fibered || calc->fiber_size != rep.dim)
        throw Error(Errc::NotFibered, "calculus is not fibered with fiber size = dim V");
    if (static_cast<int>(bein.size()) != rep.dim)
        throw Error(Errc::DimensionMismatch, "bein needs one component row per basis vector");
    for (const auto& row : bein)
        if (row.size() != calc->edges.size())
            throw Error(Errc::DimensionMismatch, "bein row must cover the edge set");
    Frame f{std::move(calc), std::move(rep), std::move(bein), std::nullopt};
    for (int x = 0; x < f.calc->npoints; ++x)
        if (!inverse(f.bein_matrix(x)))
            throw Error(Errc::Singular, "bein matrix singular at x = " + f.calc->point_names[x]);
    return f;
}

Frame bein_from_sections(Calculus calc, Representation rep,
                         const std::vector<std::vector<int>>& sections) {
    if (!calc->fibered || calc->fiber_size != rep.dim)
        throw Error(Errc::NotFibered, "calculus is not fibered with fiber size = dim V");
    if (static_cast<int>(sections.size()) != calc->npoints)
        throw Error(Errc::NotBijective, "one section per point required");
    std::vector<std::vector<Rational>> bein(rep.dim,
                                            std::vector<Rational>(calc->edges.size(), Rational(0)));
    for (int x = 0; x < calc->npoints; ++x) {
        const auto& s = sections[x];
        if (static_cast<int>(s.size()) != rep.dim)
            throw Error(Errc::NotBijective, "section at " + calc->point_names[x] +
                                                " does not enumerate the fiber");
        std::vector<int> sorted = s;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != calc->fibers[x])
            throw Error(Errc::NotBijective,
                        "section at " + calc->point_names[x] + " is not a bijection onto F_x");
        for (int i = 0; i < rep.dim; ++i) bein[i][calc->edge(x, s[i])] = 1;
    }
    return make_frame(std::move(calc), std::move(rep), std::move(bein));
}

Frame maurer_cartan(GroupPtr g, const AdStableClass& cls) {
    auto calc = group_calculus(g, cls);
    std::vector<std::vector<int>> sections(g->order());
    for (int x = 0; x < g->order(); ++x)
        for (int a : cls.members) sections[x].push_back(g->mul[x][a]);
    return bein_from_sections(std::move(calc), coadjoint_rep(cls), sections);
}

Frame cobein_from_eta(Frame frame, const KillingForm& eta) {
    const int n = frame.dim();
    if (eta.eta.rows() != static_cast<std::size_t>(n))
        throw Error(Errc::DimensionMismatch, "eta dimension != frame dimension");
    std::vector<std::vector<Rational>> cobein(n,
                                              std::vector<Rational>(frame.calc->edges.size()));
    for (int i = 0; i < n; ++i)
        for (std::size_t k = 0; k < frame.calc->edges.size(); ++k) {
            Rational s(0);
            for (int j = 0; j < n; ++j) s += eta.eta(i, j) * frame.bein[j][k];
            cobein[i][k] = s;
        }
    // per-z invertibility of [E*^i_{x,z}] over x with (x,z) in E
    for (int z = 0; z < frame.calc->npoints; ++z) {
        const auto& back = frame.calc->back_fibers[z];
        if (static_cast<int>(back.size()) != n)
            throw Error(Errc::Singular,
                        "cobein matrix not square at z = " + frame.calc->point_names[z]);
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (std::size_t c = 0; c < back.size(); ++c)
                m(i, c) = cobein[i][frame.calc->edge(back[c], z)];
        if (!inverse(m))
            throw Error(Errc::Singular,
                        "cobein matrix singular at z = " + frame.calc->point_names[z]);
    }
    frame.cobein = std::move(cobein);
    return frame;
}

Metric metric(const Frame& frame) {
    if (!frame.cobein) throw Error(Errc::MissingCobein, "metric needs a cobein");
    TensorSquare g{frame.calc, std::vector<Rational>(frame.calc->triples.size())};
    for (std::size_t t = 0; t < frame.calc->triples.size(); ++t) {
        auto [x, y, z] = frame.calc->triples[t];
        Rational s(0);
        for (int i = 0; i < frame.dim(); ++i)
            s += frame.estar(i, frame.calc->edge(x, y)) * frame.e(i, frame.calc->edge(y, z));
        g.comp[t] = s;
    }
    return Metric{frame.calc, std::move(g)};
}

std::pair<bool, TwoForm> metric_symmetry_check(const Metric& m, const WedgePtr& w) {
    TwoForm res = wedge(m.g, w);
    return {res.is_zero(), std::move(res)};
}

Connection zero_connection(const AdStableClass& cls, Calculus calc) {
    return Connection{cls, calc,
                      std::vector<std::vector<Rational>>(
                          cls.members.size(), std::vector<Rational>(calc->edges.size()))};
}

Connection make_connection(AdStableClass cls, Calculus calc,
                           std::vector<std::vector<Rational>> comp) {
    if (comp.size() != cls.members.size())
        throw Error(Errc::DimensionMismatch, "one component row per class member");
    for (const auto& row : comp)
        if (row.size() != calc->edges.size())
            throw Error(Errc::DimensionMismatch, "connection row must cover the edge set");
    return Connection{std::move(cls), std::move(calc), std::move(comp)};
}

Connection shifted_delta_connection(const AdStableClass& cls, Calculus calc, Rational shift) {
    if (!calc->is_group_calculus())
        throw Error(Errc::ConfigInvalid, "shifted delta connection needs a group calculus");
    const auto& g = *calc->group;
    Connection a = zero_connection(cls, calc);
    for (std::size_t m = 0; m < cls.members.size(); ++m)
        for (std::size_t k = 0; k < calc->edges.size(); ++k) {
            auto [x, y] = calc->edges[k];
            a.comp[m][k] = shift + Rational(g.mul[x][cls.members[m]] == y ? 1 : 0);
        }
    return a;
}

namespace {

void require_frame_tau(const Frame& frame, const TauMatrices& tau) {
    if (!tau.cls.group->same_as(*frame.rep.group))
        throw Error(Errc::ClassMismatch, "tau class on a different group");
    if (tau.rep.dim != frame.rep.dim || !(tau.rep.matrices == frame.rep.matrices))
        throw Error(Errc::RepMismatch, "tau built on a different representation");
}

void require_connection(const Connection& a, const Calculus& calc, const AdStableClass& cls) {
    if (!same_calculus(a.calc, calc))
        throw Error(Errc::CalculusMismatch, "connection on a different calculus");
    if (a.cls.members != cls.members || !a.cls.group->same_as(*cls.group))
        throw Error(Errc::ClassMismatch, "connection indexed by a different class");
}

// (B_x^T)^{-1} for every x, used for all bein-component conversions
std::vector<RatMatrix> bein_transpose_inverses(const Frame& frame) {
    std::vector<RatMatrix> out;
    out.reserve(frame.calc->npoints);
    for (int x = 0; x < frame.calc->npoints; ++x) {
        auto inv = inverse(frame.bein_matrix(x).transpose());
        if (!inv) throw Error(Errc::Singular, "bein matrix singular");
        out.push_back(std::move(*inv));
    }
    return out;
}

}  // namespace

std::vector<std::vector<Rational>> bein_components(const Frame& frame, const OneForm& alpha) {
    if (!same_calculus(alpha.calc, frame.calc))
        throw Error(Errc::CalculusMismatch, "form on a different calculus");
    auto binv = bein_transpose_inverses(frame);
    std::vector<std::vector<Rational>> comp(frame.calc->npoints);
    for (int x = 0; x < frame.calc->npoints; ++x) {
        const auto& fib = frame.calc->fibers[x];
        std::vector<Rational> row(fib.size());
        for (std::size_t c = 0; c < fib.size(); ++c)
            row[c] = alpha.comp[frame.calc->edge(x, fib[c])];
        comp[x] = binv[x].apply(row);
    }
    return comp;
}

OneForm from_bein_components(const Frame& frame, const std::vector<std::vector<Rational>>& comp) {
    OneForm a{frame.calc, std::vector<Rational>(frame.calc->edges.size())};
    for (std::size_t k = 0; k < frame.calc->edges.size(); ++k) {
        auto [x, y] = frame.calc->edges[k];
        Rational s(0);
        for (int i = 0; i < frame.dim(); ++i) s += comp[x][i] * frame.bein[i][k];
        a.comp[k] = s;
    }
    return a;
}

std::vector<std::vector<std::vector<Rational>>> connection_bein_components(const Frame& frame,
                                                                           const Connection& a) {
    require_connection(a, frame.calc, a.cls);
    std::vector<std::vector<std::vector<Rational>>> out;
    out.reserve(a.cls.members.size());
    for (std::size_t m = 0; m < a.cls.members.size(); ++m)
        out.push_back(bein_components(frame, OneForm{frame.calc, a.comp[m]}));
    return out;
}

TensorSquare covariant_derivative(const OneForm& alpha, const Connection& a, const Frame& frame,
                                  const TauMatrices& tau) {
    require_frame_tau(frame, tau);
    require_connection(a, frame.calc, a.cls);
    auto ac = bein_components(frame, alpha);
    const auto& calc = *frame.calc;
    const int n = frame.dim();
    const int nm = a.cls.size();
    TensorSquare out{frame.calc, std::vector<Rational>(calc.triples.size())};
    for (std::size_t t = 0; t < calc.triples.size(); ++t) {
        auto [x, y, z] = calc.triples[t];
        const int exy = calc.edge(x, y), eyz = calc.edge(y, z);
        Rational s(0);
        for (int i = 0; i < n; ++i) s += (ac[y][i] - ac[x][i]) * frame.bein[i][eyz];
        for (int m = 0; m < nm; ++m) {
            if (a.comp[m][exy] == 0) continue;
            const RatMatrix& tm = tau.tau[m];
            for (int i = 0; i < n; ++i) {
                if (ac[x][i] == 0) continue;
                for (int j = 0; j < n; ++j) {
                    if (tm(j, i) == 0) continue;
                    s -= ac[x][i] * a.comp[m][exy] * frame.bein[j][eyz] * tm(j, i);
                }
            }
        }
        out.comp[t] = s;
    }
    return out;
}

namespace {

// member-index pairs (c,d) with member_c * member_d = target, per target
std::vector<std::vector<std::pair<int, int>>> product_pairs(const AdStableClass& cls) {
    const auto& g = *cls.group;
    std::vector<std::vector<std::pair<int, int>>> pairs(cls.size());
    for (int c = 0; c < cls.size(); ++c)
        for (int d = 0; d < cls.size(); ++d) {
            int idx = cls.index_of(g.mul[cls.members[c]][cls.members[d]]);
            if (idx >= 0) pairs[idx].emplace_back(c, d);
        }
    return pairs;
}

// quadratic curvature weight at a fixed member index and mid point:
// sum_{cd=a} A_c(x,y) A_d(y,z) - sum_b (A_b(x,y) A_a(y,z) + A_a(x,y) A_b(y,z))
Rational curvature_quad(const Connection& a, int m,
                        const std::vector<std::vector<std::pair<int, int>>>& pairs, int exy,
                        int eyz) {
    Rational s(0);
    for (auto [c, d] : pairs[m]) s += a.comp[c][exy] * a.comp[d][eyz];
    for (int b = 0; b < a.cls.size(); ++b)
        s -= a.comp[b][exy] * a.comp[m][eyz] + a.comp[m][exy] * a.comp[b][eyz];
    return s;
}

}  // namespace

CurvatureTensor curvature(const Connection& a, const WedgePtr& w) {
    require_connection(a, w->calc, a.cls);
    const auto& calc = *w->calc;
    auto pairs = product_pairs(a.cls);
    CurvatureTensor out{a, w, {}};
    for (int m = 0; m < a.cls.size(); ++m) {
        TwoForm f = d1(OneForm{w->calc, a.comp[m]}, w);
        for (std::size_t k = 0; k < calc.pair_fibers.size(); ++k) {
            const auto& pf = calc.pair_fibers[k];
            const auto& fib = w->fibers[k];
            for (std::size_t r = 0; r < pf.mids.size(); ++r) {
                int y = pf.mids[r];
                Rational q = curvature_quad(a, m, pairs, calc.edge(pf.x, y), calc.edge(y, pf.z));
                if (q == 0) continue;
                for (int al = 0; al < fib.dim; ++al)
                    f.comp[w->offsets[k] + al] += q * fib.p(r, al);
            }
        }
        out.comp.push_back(std::move(f));
    }
    return out;
}

RiemannTensor riemann(const CurvatureTensor& f, const TauMatrices& tau) {
    if (tau.cls.members != f.conn.cls.members)
        throw Error(Errc::ClassMismatch, "tau indexed by a different class");
    const int n = tau.rep.dim;
    RiemannTensor out{f.wedge, n, {}};
    out.op.assign(f.wedge->total_dim, RatMatrix(n, n));
    for (int m = 0; m < tau.cls.size(); ++m)
        for (int slot = 0; slot < f.wedge->total_dim; ++slot) {
            const Rational& fv = f.comp[m].comp[slot];
            if (fv == 0) continue;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) out.op[slot](i, j) += fv * tau.tau[m](i, j);
        }
    return out;
}

TwoFormOneForm riemann_apply(const RiemannTensor& r, const Frame& frame, const OneForm& alpha) {
    const auto& calc = *frame.calc;
    const int n = frame.dim();
    auto ac = bein_components(frame, alpha);
    TwoFormOneForm out{r.wedge, {}};
    out.comp.assign(r.wedge->total_dim, {});
    for (std::size_t k = 0; k < calc.pair_fibers.size(); ++k) {
        const auto& pf = calc.pair_fibers[k];
        const auto& fib = r.wedge->fibers[k];
        const auto& fz = calc.fibers[pf.z];
        for (int al = 0; al < fib.dim; ++al) {
            int slot = r.wedge->offsets[k] + al;
            std::vector<Rational> row(fz.size(), Rational(0));
            for (std::size_t c = 0; c < fz.size(); ++c) {
                int edge = calc.edge(pf.z, fz[c]);
                Rational s(0);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        s += ac[pf.x][i] * r.op[slot](j, i) * frame.bein[j][edge];
                row[c] = s;
            }
            out.comp[slot] = std::move(row);
        }
    }
    return out;
}

std::vector<TwoForm> torsion(const Connection& a, const Frame& frame, const WedgePtr& w,
                             const TauMatrices& tau) {
    require_frame_tau(frame, tau);
    require_connection(a, frame.calc, a.cls);
    const auto& calc = *frame.calc;
    const int n = frame.dim();
    std::vector<TwoForm> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        TwoForm t = d1(OneForm{frame.calc, frame.bein[i]}, w);
        for (std::size_t k = 0; k < calc.pair_fibers.size(); ++k) {
            const auto& pf = calc.pair_fibers[k];
            const auto& fib = w->fibers[k];
            if (fib.dim == 0) continue;
            for (std::size_t r = 0; r < pf.mids.size(); ++r) {
                int y = pf.mids[r];
                const int exy = calc.edge(pf.x, y), eyz = calc.edge(y, pf.z);
                Rational coeff(0);
                for (int m = 0; m < a.cls.size(); ++m) {
                    if (a.comp[m][exy] == 0) continue;
                    for (int j = 0; j < n; ++j)
                        coeff += a.comp[m][exy] * frame.bein[j][eyz] * tau.tau[m](j, i);
                }
                if (coeff == 0) continue;
                for (int al = 0; al < fib.dim; ++al)
                    t.comp[w->offsets[k] + al] += coeff * fib.p(r, al);
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<TwoForm> cotorsion(const Connection& a, const Frame& frame, const WedgePtr& w,
                               const TauMatrices& tau) {
    if (!frame.cobein) throw Error(Errc::MissingCobein, "cotorsion needs a cobein");
    require_frame_tau(frame, tau);
    require_connection(a, frame.calc, a.cls);
    const auto& calc = *frame.calc;
    const int n = frame.dim();
    std::vector<TwoForm> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        TwoForm t = d1(OneForm{frame.calc, (*frame.cobein)[i]}, w);
        for (std::size_t k = 0; k < calc.pair_fibers.size(); ++k) {
            const auto& pf = calc.pair_fibers[k];
            const auto& fib = w->fibers[k];
            if (fib.dim == 0) continue;
            for (std::size_t r = 0; r < pf.mids.size(); ++r) {
                int y = pf.mids[r];
                const int exy = calc.edge(pf.x, y), eyz = calc.edge(y, pf.z);
                Rational coeff(0);
                for (int m = 0; m < a.cls.size(); ++m) {
                    if (a.comp[m][eyz] == 0) continue;
                    for (int j = 0; j < n; ++j)
                        coeff += frame.estar(j, exy) * a.comp[m][eyz] * tau.tau[m](i, j);
                }
                if (coeff == 0) continue;
                for (int al = 0; al < fib.dim; ++al)
                    t.comp[w->offsets[k] + al] += coeff * fib.p(r, al);
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

RegularityReport regularity_check(const Connection& a, const WedgePtr& w) {
    require_connection(a, w->calc, a.cls);
    const auto& g = *a.cls.group;
    const auto& calc = *w->calc;
    RegularityReport rep;
    for (int q = 0; q < g.order(); ++q) {
        if (q == g.identity || a.cls.contains(q)) continue;
        std::vector<std::pair<int, int>> pairs;
        for (int c = 0; c < a.cls.size(); ++c)
            for (int d = 0; d < a.cls.size(); ++d)
                if (g.mul[a.cls.members[c]][a.cls.members[d]] == q) pairs.emplace_back(c, d);
        if (pairs.empty()) continue;
        for (std::size_t k = 0; k < calc.pair_fibers.size(); ++k) {
            const auto& pf = calc.pair_fibers[k];
            const auto& fib = w->fibers[k];
            for (int al = 0; al < fib.dim; ++al) {
                Rational s(0);
                for (std::size_t r = 0; r < pf.mids.size(); ++r) {
                    int y = pf.mids[r];
                    const int exy = calc.edge(pf.x, y), eyz = calc.edge(y, pf.z);
                    for (auto [c, d] : pairs) s += a.comp[c][exy] * a.comp[d][eyz] * fib.p(r, al);
                }
                if (s != 0) {
                    rep.regular = false;
                    Rational av(abs(s));
                    if (av > rep.max_abs_residual) {
                        rep.max_abs_residual = av;
                        rep.worst_slot = "q=" + g.names[q] + " x=" + calc.point_names[pf.x] +
                                         " alpha=" + std::to_string(al) +
                                         " z=" + calc.point_names[pf.z];
                    }
                }
            }
        }
    }
    return rep;
}

RicciResult ricci(const CurvatureTensor& f, const WedgePtr& w, const Frame& frame,
                  const TauMatrices& tau, const KillingForm& eta, bool index_swap) {
    if (!w->has_lift) throw Error(Errc::MissingLift, "Ricci needs a lift installed");
    require_frame_tau(frame, tau);
    const Connection& a = f.conn;
    require_connection(a, w->calc, a.cls);
    const auto& calc = *frame.calc;
    const int n = frame.dim();
    auto pairs = product_pairs(a.cls);
    auto binv = bein_transpose_inverses(frame);

    // lifted curvature i(F_a) as tensors on composable pairs, via pi = p o i
    std::vector<std::vector<Rational>> lifted(a.cls.size(),
                                              std::vector<Rational>(calc.triples.size()));
    for (std::size_t k = 0; k < calc.pair_fibers.size(); ++k) {
        const auto& pf = calc.pair_fibers[k];
        const auto& fib = w->fibers[k];
        RatMatrix pi = fib.p * *fib.lift;  // mids x mids
        const int exz = calc.edge(pf.x, pf.z);
        for (int m = 0; m < a.cls.size(); ++m) {
            Rational axz = exz < 0 ? Rational(0) : a.comp[m][exz];
            for (std::size_t wcol = 0; wcol < pf.mids.size(); ++wcol) {
                Rational s(0);
                for (std::size_t r = 0; r < pf.mids.size(); ++r) {
                    if (pi(r, wcol) == 0) continue;
                    int y = pf.mids[r];
                    const int exy = calc.edge(pf.x, y), eyz = calc.edge(y, pf.z);
                    Rational val = a.comp[m][exy] + a.comp[m][eyz] - axz;
                    val += curvature_quad(a, m, pairs, exy, eyz);
                    s += val * pi(r, wcol);
                }
                lifted[m][calc.triple(pf.x, pf.mids[wcol], pf.z)] = s;
            }
        }
    }

    // bein components i(F_a)^{ij}_x from i(F_a)_{x,w,z} = c^{ij} E_{i,x,w} E_{j,w,z}
    auto convert = [&](const std::vector<Rational>& tensor) {
        std::vector<RatMatrix> comp(calc.npoints);
        for (int x = 0; x < calc.npoints; ++x) {
            const auto& fx = calc.fibers[x];
            RatMatrix d(fx.size(), n);
            for (std::size_t wi = 0; wi < fx.size(); ++wi) {
                int wpt = fx[wi];
                const auto& fw = calc.fibers[wpt];
                std::vector<Rational> trow(fw.size());
                for (std::size_t zi = 0; zi < fw.size(); ++zi) {
                    int tidx = calc.triple(x, wpt, fw[zi]);
                    trow[zi] = tidx < 0 ? Rational(0) : tensor[tidx];
                }
                auto drow = binv[wpt].apply(trow);
                for (int j = 0; j < n; ++j) d(wi, j) = drow[j];
            }
            RatMatrix c(n, n);
            for (int j = 0; j < n; ++j) {
                std::vector<Rational> col(fx.size());
                for (std::size_t wi = 0; wi < fx.size(); ++wi) col[wi] = d(wi, j);
                auto cc = binv[x].apply(col);
                for (int i = 0; i < n; ++i) c(i, j) = cc[i];
            }
            comp[x] = std::move(c);
        }
        return comp;
    };

    std::vector<std::vector<RatMatrix>> fc(a.cls.size());
    for (int m = 0; m < a.cls.size(); ++m) fc[m] = convert(lifted[m]);

    RicciResult out;
    out.index_swap = index_swap;
    out.ricci = TensorSquare{frame.calc, std::vector<Rational>(calc.triples.size())};
    for (std::size_t t = 0; t < calc.triples.size(); ++t) {
        auto [x, y, z] = calc.triples[t];
        const int exy = calc.edge(x, y), eyz = calc.edge(y, z);
        Rational s(0);
        for (int m = 0; m < a.cls.size(); ++m) {
            const RatMatrix& c = fc[m][x];
            const RatMatrix& tm = tau.tau[m];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Rational cij = index_swap ? c(j, i) : c(i, j);
                    if (cij == 0) continue;
                    for (int kk = 0; kk < n; ++kk)
                        s += cij * frame.bein[j][exy] * frame.bein[kk][eyz] * tm(kk, i);
                }
        }
        out.ricci.comp[t] = s;
    }

    // scalar curvature S(x) = Ricci^{ij}_x eta_{ji}
    auto rc = convert(out.ricci.comp);
    out.scalar.assign(calc.npoints, Rational(0));
    for (int x = 0; x < calc.npoints; ++x) {
        Rational s(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += rc[x](i, j) * eta.eta_inv(j, i);
        out.scalar[x] = s;
    }
    return out;
}

OneForm u0_gauge_transform(const OneForm& a, const Function& gamma) {
    if (!same_calculus(a.calc, gamma.calc))
        throw Error(Errc::CalculusMismatch, "gauge parameter on a different calculus");
    for (int x = 0; x < a.calc->npoints; ++x)
        if (gamma.values[x] == 0)
            throw Error(Errc::NotInvertible,
                        "gamma vanishes at " + a.calc->point_names[x]);
    OneForm out{a.calc, std::vector<Rational>(a.calc->edges.size())};
    for (std::size_t k = 0; k < a.calc->edges.size(); ++k) {
        auto [x, y] = a.calc->edges[k];
        out.comp[k] = a.comp[k] * gamma.values[y] / gamma.values[x] +
                      (gamma.values[y] - gamma.values[x]) / gamma.values[x];
    }
    return out;
}

TwoForm u0_curvature(const OneForm& a, const WedgePtr& w) {
    TwoForm f = d1(a, w);
    TwoForm quad = wedge(outer(a, a), w);
    for (std::size_t k = 0; k < f.comp.size(); ++k) f.comp[k] += quad.comp[k];
    return f;
}

}  // namespace fingeo
