#include "fingeo/solver.hpp"

#include <algorithm>
#include <cmath>

namespace fingeo {

std::string LinearSystem::row_label(std::size_t row) const {
    const auto& t = tags[row];
    const auto& pf = calc->pair_fibers[t.pair_fiber];
    return std::string(t.cotorsion ? "cotorsion" : "torsion") + " i=" + std::to_string(t.i) +
           " x=" + calc->point_names[pf.x] + " alpha=" + std::to_string(t.alpha) +
           " z=" + calc->point_names[pf.z];
}

LinearSystem assemble(const Frame& frame, const WedgePtr& w, const TauMatrices& tau) {
    if (!frame.cobein) throw Error(Errc::MissingCobein, "assembly needs a cobein");
    if (!same_calculus(w->calc, frame.calc))
        throw Error(Errc::CalculusMismatch, "wedge on a different calculus");
    const auto& calc = *frame.calc;
    const auto& cls = tau.cls;
    const int n = frame.dim();
    const int nm = cls.size();
    const int nedges = static_cast<int>(calc.edges.size());

    int nrows = 0;
    for (const auto& f : w->fibers) nrows += f.dim;
    nrows *= 2 * n;

    LinearSystem sys{cls, frame.calc, w, RatMatrix(nrows, nm * nedges), {}, {}};
    sys.tags.reserve(nrows);
    int row = 0;
    for (int pass = 0; pass < 2; ++pass) {
        const bool cot = pass == 1;
        for (int i = 0; i < n; ++i) {
            // constant term: d of the (co)bein leg
            TwoForm de = d1(OneForm{frame.calc, cot ? (*frame.cobein)[i] : frame.bein[i]}, w);
            for (std::size_t k = 0; k < calc.pair_fibers.size(); ++k) {
                const auto& pf = calc.pair_fibers[k];
                const auto& fib = w->fibers[k];
                for (int al = 0; al < fib.dim; ++al, ++row) {
                    sys.tags.push_back({cot, i, static_cast<int>(k), al});
                    sys.rhs.push_back(-de.comp[w->offsets[k] + al]);
                    for (std::size_t r = 0; r < pf.mids.size(); ++r) {
                        int y = pf.mids[r];
                        const int exy = calc.edge(pf.x, y), eyz = calc.edge(y, pf.z);
                        if (fib.p(r, al) == 0) continue;
                        for (int m = 0; m < nm; ++m) {
                            Rational coeff(0);
                            for (int j = 0; j < n; ++j) {
                                if (cot)
                                    coeff += frame.estar(j, exy) * tau.tau[m](i, j);
                                else
                                    coeff += frame.bein[j][eyz] * tau.tau[m](j, i);
                            }
                            if (coeff == 0) continue;
                            int c = sys.col(m, cot ? eyz : exy);
                            sys.mat(row, c) += coeff * fib.p(r, al);
                        }
                    }
                }
            }
        }
    }
    return sys;
}

SolutionSpace solve(const LinearSystem& sys) {
    LinearSolution ls = solve_linear(sys.mat, sys.rhs);
    SolutionSpace out;
    out.feasible = ls.feasible;
    if (!ls.feasible) {
        out.infeasibility_certificate = ls.certificate;
        return out;
    }
    out.particular = std::move(ls.particular);
    out.null_basis = std::move(ls.null_basis);
    out.dim = static_cast<int>(out.null_basis.cols());
    return out;
}

Connection connection_from_vector(const AdStableClass& cls, Calculus calc,
                                  const std::vector<Rational>& vec) {
    const int nedges = static_cast<int>(calc->edges.size());
    std::vector<std::vector<Rational>> comp(cls.members.size(),
                                            std::vector<Rational>(nedges));
    for (std::size_t m = 0; m < cls.members.size(); ++m)
        for (int e = 0; e < nedges; ++e) comp[m][e] = vec[m * nedges + e];
    return make_connection(cls, std::move(calc), std::move(comp));
}

std::vector<Rational> vector_from_connection(const Connection& a) {
    std::vector<Rational> v;
    for (const auto& row : a.comp) v.insert(v.end(), row.begin(), row.end());
    return v;
}

ConnectionDiagnostics verify_connection(const Connection& a, const Frame& frame,
                                        const WedgePtr& w, const TauMatrices& tau) {
    ConnectionDiagnostics d;
    auto tor = torsion(a, frame, w, tau);
    for (std::size_t i = 0; i < tor.size(); ++i) {
        Rational m = tor[i].max_abs();
        if (m > d.torsion_max) {
            d.torsion_max = m;
            d.worst_torsion_row = "i=" + std::to_string(i);
        }
    }
    if (frame.cobein) {
        auto cot = cotorsion(a, frame, w, tau);
        for (const auto& t : cot) d.cotorsion_max = std::max(d.cotorsion_max, t.max_abs());
    }
    auto reg = regularity_check(a, w);
    d.regularity_max = reg.max_abs_residual;
    d.worst_regularity_slot = reg.worst_slot;
    return d;
}

namespace {

// regularity residuals as polynomials in the affine parameters t:
// A(t) = A0 + sum_k t_k B_k
std::vector<MPoly> regularity_polynomials(const LinearSystem& sys, const SolutionSpace& sol) {
    const auto& g = *sys.cls.group;
    const auto& calc = *sys.calc;
    const auto& w = *sys.wedge;
    const int d = sol.dim;
    const int nedges = static_cast<int>(calc.edges.size());

    // affine-linear polynomial for each unknown
    auto entry = [&](int m, int e) {
        MPoly p = MPoly::constant(d, sol.particular[sys.col(m, e)]);
        for (int k = 0; k < d; ++k) {
            Rational c = sol.null_basis(sys.col(m, e), k);
            if (c != 0) p = p + MPoly::constant(d, c) * MPoly::variable(d, k);
        }
        return p;
    };
    // cache: many edges share polynomials
    std::vector<std::vector<MPoly>> cache(sys.cls.size(), std::vector<MPoly>(nedges));
    std::vector<std::vector<bool>> cached(sys.cls.size(), std::vector<bool>(nedges, false));
    auto at = [&](int m, int e) -> const MPoly& {
        if (!cached[m][e]) {
            cache[m][e] = entry(m, e);
            cached[m][e] = true;
        }
        return cache[m][e];
    };

    std::vector<MPoly> polys;
    for (int q = 0; q < g.order(); ++q) {
        if (q == g.identity || sys.cls.contains(q)) continue;
        std::vector<std::pair<int, int>> pairs;
        for (int c = 0; c < sys.cls.size(); ++c)
            for (int dd = 0; dd < sys.cls.size(); ++dd)
                if (g.mul[sys.cls.members[c]][sys.cls.members[dd]] == q) pairs.emplace_back(c, dd);
        if (pairs.empty()) continue;
        for (std::size_t k = 0; k < calc.pair_fibers.size(); ++k) {
            const auto& pf = calc.pair_fibers[k];
            const auto& fib = w.fibers[k];
            for (int al = 0; al < fib.dim; ++al) {
                MPoly poly(d);
                for (std::size_t r = 0; r < pf.mids.size(); ++r) {
                    if (fib.p(r, al) == 0) continue;
                    int y = pf.mids[r];
                    const int exy = calc.edge(pf.x, y), eyz = calc.edge(y, pf.z);
                    for (auto [c, dd] : pairs) {
                        MPoly prod = at(c, exy) * at(dd, eyz);
                        poly = poly + MPoly::constant(d, fib.p(r, al)) * prod;
                    }
                }
                if (!poly.is_zero()) polys.push_back(std::move(poly));
            }
        }
    }
    return polys;
}

std::vector<Rational> point_to_unknowns(const SolutionSpace& sol,
                                        const std::vector<Rational>& t) {
    std::vector<Rational> v = sol.particular;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (int k = 0; k < sol.dim; ++k) v[i] += sol.null_basis(i, k) * t[k];
    return v;
}

}  // namespace

LeviCivitaReport levi_civita(const Frame& frame, const WedgePtr& w, const TauMatrices& tau) {
    LeviCivitaReport rep;
    LinearSystem sys = assemble(frame, w, tau);
    rep.linear = solve(sys);
    if (!rep.linear.feasible) {
        rep.verdict = LeviCivitaReport::Verdict::Infeasible;
        rep.notes = "torsion/cotorsion system inconsistent";
        return rep;
    }
    rep.linear_dim = rep.linear.dim;

    auto polys = regularity_polynomials(sys, rep.linear);
    rep.quadratic_constraints = static_cast<int>(polys.size());

    auto push_solution = [&](const std::vector<Rational>& t) {
        Connection a = connection_from_vector(sys.cls, sys.calc, point_to_unknowns(rep.linear, t));
        auto diag = verify_connection(a, frame, w, tau);
        if (!diag.levi_civita()) return false;  // exact re-verification is the gate
        rep.regular_solutions.push_back(std::move(a));
        rep.diagnostics.push_back(std::move(diag));
        return true;
    };

    if (polys.empty()) {
        // no regularity constraints cut the family
        if (rep.linear.dim == 0) {
            push_solution({});
            rep.verdict = LeviCivitaReport::Verdict::Unique;
        } else {
            push_solution(std::vector<Rational>(rep.linear.dim, Rational(0)));
            rep.verdict = LeviCivitaReport::Verdict::RegularFamily;
            rep.family_dim = rep.linear.dim;
            rep.notes = "every solution of the linear system is regular";
        }
        return rep;
    }

    if (rep.linear.dim <= 3) {
        SystemSolveResult qs = solve_small_system(polys, rep.linear.dim);
        rep.irrational_candidates = qs.irrational_seen;
        switch (qs.status) {
            case SystemSolveResult::Status::EntireSpace: {
                const int fdim = static_cast<int>(qs.family_basis.cols());
                push_solution(qs.family_particular);
                if (fdim == 0) {
                    rep.verdict = LeviCivitaReport::Verdict::Unique;
                } else {
                    rep.verdict = LeviCivitaReport::Verdict::RegularFamily;
                    rep.family_dim = fdim;
                    rep.notes = "regular solutions form an affine family";
                }
                return rep;
            }
            case SystemSolveResult::Status::Solved: {
                for (const auto& t : qs.rational_points) push_solution(t);
                if (rep.regular_solutions.empty())
                    rep.verdict = qs.irrational_seen
                                      ? LeviCivitaReport::Verdict::Incomplete
                                      : LeviCivitaReport::Verdict::NoneFound;
                else if (rep.regular_solutions.size() == 1 && !qs.irrational_seen)
                    rep.verdict = LeviCivitaReport::Verdict::Unique;
                else
                    rep.verdict = LeviCivitaReport::Verdict::Multiple;
                if (qs.irrational_seen)
                    rep.notes = "irrational candidate roots were rejected (exact mode)";
                return rep;
            }
            case SystemSolveResult::Status::Incomplete: {
                for (const auto& t : qs.rational_points) push_solution(t);
                rep.verdict = LeviCivitaReport::Verdict::Incomplete;
                rep.notes = "exact quadratic stage incomplete: " + qs.note;
                return rep;
            }
        }
    }

    // d > 3: seeded numeric multistart, then exact rationalization
    rep.used_numeric_stage = true;
    auto candidates = newton_multistart(polys, rep.linear.dim, 64, 1e-9);
    for (const auto& c : candidates) {
        std::vector<Rational> t;
        bool exact = true;
        for (double v : c) {
            Rational r = rationalize(v, 1000000);
            if (std::abs(to_double(r) - v) > 1e-6) exact = false;
            t.push_back(r);
        }
        bool verified = false;
        if (exact) {
            verified = true;
            for (const auto& p : polys)
                if (p.eval(t) != 0) verified = false;
        }
        if (!(verified && push_solution(t))) rep.numeric_only.push_back(c);
    }
    if (rep.regular_solutions.empty())
        rep.verdict = rep.numeric_only.empty() ? LeviCivitaReport::Verdict::NoneFound
                                               : LeviCivitaReport::Verdict::Incomplete;
    else if (rep.regular_solutions.size() == 1 && rep.numeric_only.empty())
        rep.verdict = LeviCivitaReport::Verdict::Unique;
    else
        rep.verdict = LeviCivitaReport::Verdict::Multiple;
    rep.notes = "numeric multistart stage (solution space dimension > 3); "
                "uniqueness is evidence, not proof";
    if (rep.numeric_only.size() >= 8)
        rep.notes += "; many distinct numeric candidates: the regular set is likely "
                     "positive-dimensional";
    return rep;
}

}  // namespace fingeo
