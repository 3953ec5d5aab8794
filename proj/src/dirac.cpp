#include "fingeo/dirac.hpp"

#include "fingeo/polysolve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>

namespace fingeo {

CMatrix to_complex(const RatMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Complex(to_double(m(i, j)), 0.0);
    return out;
}

namespace {

double frobenius(const CMatrix& m) {
    double s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

CMatrix relation_matrix(const CMatrix& gi, const CMatrix& gj, bool diag) {
    const std::size_t w = gi.rows();
    CMatrix r = gi * gj + gj * gi;
    for (std::size_t a = 0; a < w; ++a)
        for (std::size_t b = 0; b < w; ++b) {
            r(a, b) += (2.0 / 3.0) * (gi(a, b) + gj(a, b));
            if (a == b) r(a, b) -= (1.0 / 3.0) * ((diag ? 1.0 : 0.0) - 1.0);
        }
    return r;
}

}  // namespace

double gamma_relation_residual(const std::vector<CMatrix>& gammas) {
    double worst = 0;
    for (std::size_t i = 0; i < gammas.size(); ++i)
        for (std::size_t j = 0; j < gammas.size(); ++j)
            worst = std::max(worst, frobenius(relation_matrix(gammas[i], gammas[j], i == j)));
    return worst;
}

Rational gamma_relation_residual_exact(const std::vector<RatMatrix>& gammas) {
    Rational worst(0);
    const Rational two_thirds = rat(2, 3), third = rat(1, 3);
    for (std::size_t i = 0; i < gammas.size(); ++i)
        for (std::size_t j = 0; j < gammas.size(); ++j) {
            RatMatrix r = gammas[i] * gammas[j] + gammas[j] * gammas[i] +
                          two_thirds * (gammas[i] + gammas[j]);
            Rational shift = third * Rational((i == j ? 1 : 0) - 1);
            for (std::size_t a = 0; a < r.rows(); ++a) r(a, a) -= shift;
            for (std::size_t a = 0; a < r.rows(); ++a)
                for (std::size_t b = 0; b < r.cols(); ++b)
                    worst = std::max(worst, Rational(abs(r(a, b))));
        }
    return worst;
}

double equivariance_residual(const AdStableClass& cls, const Representation& rep_w,
                             const std::vector<CMatrix>& gammas) {
    const auto& g = *cls.group;
    double worst = 0;
    for (int gg = 0; gg < g.order(); ++gg) {
        CMatrix rho = to_complex(rep_w.at(gg));
        for (int i = 0; i < cls.size(); ++i) {
            int target = cls.index_of(g.conjugate(gg, cls.members[i]));
            // rho(g) gamma_i - gamma_{gig^-1} rho(g)
            CMatrix lhs = rho * gammas[i] - gammas[target] * rho;
            worst = std::max(worst, frobenius(lhs));
        }
    }
    return worst;
}

Representation s3_standard_rep(GroupPtr s3) {
    if (s3->order() != 6) throw Error(Errc::ConfigInvalid, "s3_standard_rep needs the s3 preset");
    auto m = [](long a, long b, long c, long d) {
        RatMatrix r(2, 2);
        r(0, 0) = a;
        r(0, 1) = b;
        r(1, 0) = c;
        r(1, 1) = d;
        return r;
    };
    std::map<std::string, RatMatrix> table = {
        {"e", m(1, 0, 0, 1)},     {"(01)", m(-1, 1, 0, 1)},  {"(02)", m(0, -1, -1, 0)},
        {"(12)", m(1, 0, 1, -1)}, {"(012)", m(0, -1, 1, -1)}, {"(021)", m(-1, 1, -1, 0)},
    };
    std::vector<RatMatrix> mats;
    for (const auto& name : s3->names) {
        auto it = table.find(name);
        if (it == table.end())
            throw Error(Errc::ConfigInvalid, "s3_standard_rep: unexpected element " + name);
        mats.push_back(it->second);
    }
    return make_representation(s3, 2, std::move(mats));
}

SpinorSetup make_spinor_setup(Representation rep_w, std::vector<CMatrix> gammas,
                              std::optional<std::vector<RatMatrix>> exact) {
    if (exact) {
        if (exact->size() != gammas.size())
            throw Error(Errc::DimensionMismatch, "exact gamma count mismatch");
    }
    for (const auto& gm : gammas)
        if (gm.rows() != static_cast<std::size_t>(rep_w.dim) || gm.cols() != gm.rows())
            throw Error(Errc::DimensionMismatch, "gamma shape != spinor dimension");
    return SpinorSetup{std::move(rep_w), std::move(gammas), std::move(exact)};
}

namespace {

// rational basis of the equivariant gamma space: solutions of
// rho(g) gamma_i = gamma_{gig^-1} rho(g) for all g, i
std::vector<std::vector<RatMatrix>> equivariant_basis(const AdStableClass& cls,
                                                      const Representation& rep_w) {
    const auto& g = *cls.group;
    const int nm = cls.size();
    const int w = rep_w.dim;
    const int nunk = nm * w * w;
    auto unk = [&](int i, int r, int c) { return i * w * w + r * w + c; };
    std::vector<std::vector<Rational>> rows;
    for (int gg = 0; gg < g.order(); ++gg) {
        const RatMatrix& rho = rep_w.at(gg);
        for (int i = 0; i < nm; ++i) {
            int target = cls.index_of(g.conjugate(gg, cls.members[i]));
            for (int r = 0; r < w; ++r)
                for (int c = 0; c < w; ++c) {
                    std::vector<Rational> row(nunk, Rational(0));
                    for (int k = 0; k < w; ++k) {
                        row[unk(i, k, c)] += rho(r, k);
                        row[unk(target, r, k)] -= rho(k, c);
                    }
                    rows.push_back(std::move(row));
                }
        }
    }
    RatMatrix m(rows.size(), nunk);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < nunk; ++c) m(r, c) = rows[r][c];
    RatMatrix basis = null_space(m);
    std::vector<std::vector<RatMatrix>> out;
    for (std::size_t k = 0; k < basis.cols(); ++k) {
        std::vector<RatMatrix> triple(nm, RatMatrix(w, w));
        for (int i = 0; i < nm; ++i)
            for (int r = 0; r < w; ++r)
                for (int c = 0; c < w; ++c) triple[i](r, c) = basis(unk(i, r, c), k);
        out.push_back(std::move(triple));
    }
    return out;
}

// the relation residual entries as rational polynomials in the coordinates
// along the equivariant basis; when complex_vars, variables are interleaved
// (re_0, im_0, re_1, im_1, ...) and both components are produced
std::vector<MPoly> relation_polynomials(const std::vector<std::vector<RatMatrix>>& basis,
                                        bool complex_vars) {
    const int m = static_cast<int>(basis.size());
    const int nm = m == 0 ? 0 : static_cast<int>(basis[0].size());
    const int w = m == 0 ? 0 : static_cast<int>(basis[0][0].rows());
    const int nv = complex_vars ? 2 * m : m;
    const Rational two_thirds = rat(2, 3), third = rat(1, 3);
    std::vector<MPoly> polys;
    auto re_var = [&](int k) { return MPoly::variable(nv, complex_vars ? 2 * k : k); };
    auto im_var = [&](int k) { return MPoly::variable(nv, 2 * k + 1); };
    for (int i = 0; i < nm; ++i)
        for (int j = 0; j < nm; ++j) {
            for (int r = 0; r < w; ++r)
                for (int c = 0; c < w; ++c) {
                    MPoly re(nv), im(nv);
                    for (int k = 0; k < m; ++k)
                        for (int l = 0; l < m; ++l) {
                            Rational coeff(0);
                            for (int s = 0; s < w; ++s)
                                coeff += basis[k][i](r, s) * basis[l][j](s, c) +
                                         basis[k][j](r, s) * basis[l][i](s, c);
                            if (coeff == 0) continue;
                            MPoly cf = MPoly::constant(nv, coeff);
                            re = re + cf * (re_var(k) * re_var(l));
                            if (complex_vars) {
                                re = re - cf * (im_var(k) * im_var(l));
                                im = im + cf * (re_var(k) * im_var(l)) +
                                     cf * (im_var(k) * re_var(l));
                            }
                        }
                    for (int k = 0; k < m; ++k) {
                        Rational coeff = two_thirds * (basis[k][i](r, c) + basis[k][j](r, c));
                        if (coeff == 0) continue;
                        re = re + MPoly::constant(nv, coeff) * re_var(k);
                        if (complex_vars) im = im + MPoly::constant(nv, coeff) * im_var(k);
                    }
                    if (r == c) {
                        Rational rhs = third * Rational((i == j ? 1 : 0) - 1);
                        re = re - MPoly::constant(nv, rhs);
                    }
                    if (!re.is_zero()) polys.push_back(re);
                    if (complex_vars && !im.is_zero()) polys.push_back(im);
                }
        }
    return polys;
}

}  // namespace

std::vector<SpinorSetup> gamma_search(GroupPtr g, const AdStableClass& cls,
                                      const Representation& rep_w, double tol) {
    if (!g->same_as(*cls.group)) throw Error(Errc::GroupMismatch, "class on a different group");
    auto basis = equivariant_basis(cls, rep_w);
    std::vector<SpinorSetup> found;
    if (basis.empty()) throw Error(Errc::NotFound, "no equivariant gamma space");
    const int m = static_cast<int>(basis.size());
    const int nm = cls.size();
    const int w = rep_w.dim;

    auto gamma_from_exact = [&](const std::vector<Rational>& t) {
        std::vector<RatMatrix> gams(nm, RatMatrix(w, w));
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < nm; ++i)
                for (int r = 0; r < w; ++r)
                    for (int c = 0; c < w; ++c) gams[i](r, c) += t[k] * basis[k][i](r, c);
        return gams;
    };

    // exact stage over real coordinates
    if (m <= 3) {
        auto polys = relation_polynomials(basis, false);
        SystemSolveResult qs = solve_small_system(polys, m);
        auto points = qs.rational_points;
        std::sort(points.begin(), points.end());
        for (const auto& t : points) {
            auto exact = gamma_from_exact(t);
            if (gamma_relation_residual_exact(exact) != 0) continue;
            std::vector<CMatrix> gams;
            for (const auto& e : exact) gams.push_back(to_complex(e));
            found.push_back(SpinorSetup{rep_w, std::move(gams), std::move(exact)});
        }
    }

    // complex multistart stage
    auto cpolys = relation_polynomials(basis, true);
    auto candidates = newton_multistart(cpolys, 2 * m, 64, std::max(tol, 1e-12));
    std::sort(candidates.begin(), candidates.end());
    for (const auto& t : candidates) {
        std::vector<CMatrix> gams(nm, CMatrix(w, w));
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < nm; ++i)
                for (int r = 0; r < w; ++r)
                    for (int c = 0; c < w; ++c)
                        gams[i](r, c) += Complex(t[2 * k], t[2 * k + 1]) *
                                         Complex(to_double(basis[k][i](r, c)), 0.0);
        if (gamma_relation_residual(gams) > std::max(tol, 1e-10)) continue;
        bool dup = false;
        for (const auto& f : found) {
            double d = 0;
            for (int i = 0; i < nm; ++i)
                for (int r = 0; r < w; ++r)
                    for (int c = 0; c < w; ++c) d += std::norm(f.gammas[i](r, c) - gams[i](r, c));
            if (std::sqrt(d) < 1e-6) dup = true;
        }
        if (!dup) found.push_back(SpinorSetup{rep_w, std::move(gams), std::nullopt});
    }

    if (found.empty())
        throw Error(Errc::NotFound, "gamma search exhausted without a solution");
    return found;
}

std::vector<CMatrix> dirac_connection_term(const Connection& a, const Frame& frame,
                                           const SpinorSetup& spin) {
    if (static_cast<int>(spin.gammas.size()) != frame.dim())
        throw Error(Errc::DimensionMismatch, "one gamma per bein index required");
    if (!spin.rep_w.group->same_as(*a.cls.group))
        throw Error(Errc::GroupMismatch, "spinor representation on a different group");
    const auto& g = *a.cls.group;
    const int w = spin.rep_w.dim;
    auto ac = connection_bein_components(frame, a);
    std::vector<CMatrix> tauw;
    for (int mem : a.cls.members)
        tauw.push_back(to_complex(spin.rep_w.at(g.inv[mem]) - RatMatrix::identity(w)));
    std::vector<CMatrix> out;
    for (int x = 0; x < frame.calc->npoints; ++x) {
        CMatrix mx(w, w);
        for (int mm = 0; mm < a.cls.size(); ++mm)
            for (int i = 0; i < frame.dim(); ++i) {
                double coeff = to_double(ac[mm][x][i]);
                if (coeff == 0) continue;
                CMatrix term = spin.gammas[i] * tauw[mm];
                for (int r = 0; r < w; ++r)
                    for (int c = 0; c < w; ++c) mx(r, c) += coeff * term(r, c);
            }
        out.push_back(std::move(mx));
    }
    return out;
}

DiracOperator dirac_operator(const Connection& a, const Frame& frame, const SpinorSetup& spin) {
    if (static_cast<int>(spin.gammas.size()) != frame.dim())
        throw Error(Errc::DimensionMismatch, "one gamma per bein index required");
    const auto& calc = *frame.calc;
    const int n = frame.dim();
    const int w = spin.rep_w.dim;
    const int npts = calc.npoints;
    DiracOperator op;
    op.npoints = npts;
    op.wdim = w;
    op.mat = CMatrix(npts * w, npts * w);

    // partial derivative weights: del^i f(x) = sum_c binv_x(i,c) (f_{F_x[c]} - f_x)
    std::vector<RatMatrix> binv;
    for (int x = 0; x < npts; ++x) {
        auto iv = inverse(frame.bein_matrix(x).transpose());
        if (!iv) throw Error(Errc::Singular, "bein matrix singular");
        binv.push_back(std::move(*iv));
    }

    const bool exact_mode = spin.exact_gammas.has_value();
    RatMatrix exact;
    if (exact_mode) exact = RatMatrix(npts * w, npts * w);

    auto conn = dirac_connection_term(a, frame, spin);
    auto ac = connection_bein_components(frame, a);
    std::vector<RatMatrix> tauw_exact;
    if (exact_mode)
        for (int mem : a.cls.members)
            tauw_exact.push_back(spin.rep_w.at(frame.rep.group->inv[mem]) -
                                 RatMatrix::identity(w));

    for (int x = 0; x < npts; ++x) {
        const auto& fib = calc.fibers[x];
        for (int i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < fib.size(); ++c) {
                Rational weight = binv[x](i, c);
                if (weight == 0) continue;
                int y = fib[c];
                for (int r = 0; r < w; ++r)
                    for (int s = 0; s < w; ++s) {
                        Complex gv = spin.gammas[i](r, s);
                        op.mat(x * w + r, y * w + s) += to_double(weight) * gv;
                        op.mat(x * w + r, x * w + s) -= to_double(weight) * gv;
                        if (exact_mode) {
                            Rational ge = (*spin.exact_gammas)[i](r, s);
                            exact(x * w + r, y * w + s) += weight * ge;
                            exact(x * w + r, x * w + s) -= weight * ge;
                        }
                    }
            }
        }
        for (int r = 0; r < w; ++r)
            for (int s = 0; s < w; ++s) op.mat(x * w + r, x * w + s) -= conn[x](r, s);
        if (exact_mode) {
            RatMatrix mx(w, w);
            for (int mm = 0; mm < a.cls.size(); ++mm)
                for (int i = 0; i < n; ++i) {
                    if (ac[mm][x][i] == 0) continue;
                    RatMatrix term = (*spin.exact_gammas)[i] * tauw_exact[mm];
                    for (int r = 0; r < w; ++r)
                        for (int s = 0; s < w; ++s) mx(r, s) += ac[mm][x][i] * term(r, s);
                }
            for (int r = 0; r < w; ++r)
                for (int s = 0; s < w; ++s) exact(x * w + r, x * w + s) -= mx(r, s);
        }
    }
    if (exact_mode) op.exact = std::move(exact);
    return op;
}

std::vector<SpectrumEntry> spectrum(const CMatrix& m, double cluster_tol) {
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXcd em(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) em(i, j) = m(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(em, false);
    std::vector<Complex> vals;
    for (int i = 0; i < n; ++i) vals.push_back(solver.eigenvalues()[i]);
    std::sort(vals.begin(), vals.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<SpectrumEntry> out;
    for (const auto& v : vals) {
        if (!out.empty() && std::abs(out.back().value - v) < cluster_tol)
            ++out.back().multiplicity;
        else
            out.push_back({v, 1});
    }
    return out;
}

}  // namespace fingeo
