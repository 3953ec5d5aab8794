#include "fingeo/polysolve.hpp"

#include "fingeo/error.hpp"
#include "fingeo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <sstream>

namespace fingeo {

MPoly MPoly::constant(int nvars, const Rational& c) {
    MPoly p(nvars);
    if (c != 0) p.terms_[std::vector<int>(nvars, 0)] = c;
    return p;
}

MPoly MPoly::variable(int nvars, int idx) {
    MPoly p(nvars);
    std::vector<int> e(nvars, 0);
    e[idx] = 1;
    p.terms_[e] = 1;
    return p;
}

int MPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int v : e) s += v;
        d = std::max(d, s);
    }
    return d;
}

int MPoly::degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

void MPoly::add_term(const std::vector<int>& exps, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_[exps] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<int> e(nvars_);
            for (int v = 0; v < nvars_; ++v) e[v] = e1[v] + e2[v];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Rational MPoly::eval(const std::vector<Rational>& point) const {
    Rational s(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < e[v]; ++k) t *= point[v];
        s += t;
    }
    return s;
}

double MPoly::eval_double(const std::vector<double>& point) const {
    double s = 0;
    for (const auto& [e, c] : terms_) {
        double t = to_double(c);
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < e[v]; ++k) t *= point[v];
        s += t;
    }
    return s;
}

std::vector<double> MPoly::gradient_double(const std::vector<double>& point) const {
    std::vector<double> g(nvars_, 0.0);
    for (const auto& [e, c] : terms_) {
        for (int v = 0; v < nvars_; ++v) {
            if (e[v] == 0) continue;
            double t = to_double(c) * e[v];
            for (int u = 0; u < nvars_; ++u) {
                int pow = e[u] - (u == v ? 1 : 0);
                for (int k = 0; k < pow; ++k) t *= point[u];
            }
            g[v] += t;
        }
    }
    return g;
}

MPoly MPoly::coeff_of(int var, int k) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != k) continue;
        std::vector<int> e2 = e;
        e2[var] = 0;
        r.add_term(e2, c);
    }
    return r;
}

MPoly MPoly::compose(const std::vector<MPoly>& images) const {
    const int out_vars = images.empty() ? 0 : images[0].nvars();
    MPoly r(out_vars);
    for (const auto& [e, c] : terms_) {
        MPoly t = MPoly::constant(out_vars, c);
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < e[v]; ++k) t = t * images[v];
        r = r + t;
    }
    return r;
}

std::vector<Rational> MPoly::univariate(int var) const {
    std::vector<Rational> coeffs(degree_in(var) + 1, Rational(0));
    for (const auto& [e, c] : terms_) {
        for (int v = 0; v < nvars_; ++v)
            if (v != var && e[v] != 0)
                throw Error(Errc::Internal, "polynomial is not univariate");
        coeffs[e[var]] += c;
    }
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << to_string(c);
        for (int v = 0; v < nvars_; ++v)
            if (e[v] > 0) os << "*t" << v << "^" << e[v];
    }
    return os.str();
}

MPoly resultant(const MPoly& f, const MPoly& g, int var) {
    const int df = f.degree_in(var), dg = g.degree_in(var);
    if (df == 0) {
        // res(c, g) = c^{deg g}
        MPoly r = MPoly::constant(f.nvars(), Rational(1));
        for (int k = 0; k < dg; ++k) r = r * f;
        return r;
    }
    if (dg == 0) {
        MPoly r = MPoly::constant(g.nvars(), Rational(1));
        for (int k = 0; k < df; ++k) r = r * g;
        return r;
    }
    const int n = df + dg;
    // Sylvester matrix, rows of g-shifts then f-shifts
    std::vector<std::vector<MPoly>> syl(n, std::vector<MPoly>(n, MPoly(f.nvars())));
    for (int r = 0; r < dg; ++r)
        for (int k = 0; k <= df; ++k) syl[r][r + k] = f.coeff_of(var, df - k);
    for (int r = 0; r < df; ++r)
        for (int k = 0; k <= dg; ++k) syl[dg + r][r + k] = g.coeff_of(var, dg - k);
    // determinant by column-subset memoized Laplace expansion
    std::vector<MPoly> memo(std::size_t(1) << n, MPoly(f.nvars()));
    std::vector<bool> known(std::size_t(1) << n, false);
    memo[0] = MPoly::constant(f.nvars(), Rational(1));
    known[0] = true;
    // state = set of used rows; column index = popcount(state)
    std::vector<std::size_t> order;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) order.push_back(mask);
    std::sort(order.begin(), order.end(), [](std::size_t a, std::size_t b) {
        return __builtin_popcountll(a) < __builtin_popcountll(b);
    });
    for (std::size_t mask : order) {
        if (!known[mask]) continue;
        int col = __builtin_popcountll(mask);
        if (col == n) continue;
        int sign_count = 0;
        for (int row = 0; row < n; ++row) {
            if (mask & (std::size_t(1) << row)) continue;
            std::size_t next = mask | (std::size_t(1) << row);
            MPoly contrib = syl[row][col] * memo[mask];
            if (sign_count % 2 == 1) contrib = -contrib;
            if (!known[next]) {
                memo[next] = contrib;
                known[next] = true;
            } else {
                memo[next] = memo[next] + contrib;
            }
            ++sign_count;
        }
    }
    return memo[(std::size_t(1) << n) - 1];
}

namespace {

std::vector<Rational> trim(std::vector<Rational> p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

bool is_zero_poly(const std::vector<Rational>& p) {
    for (const auto& c : p)
        if (c != 0) return false;
    return true;
}

std::vector<Rational> poly_mod(std::vector<Rational> a, const std::vector<Rational>& b) {
    a = trim(std::move(a));
    while (a.size() >= b.size() && !is_zero_poly(a)) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a = trim(std::move(a));
        if (a.size() == 1 && a[0] == 0) break;
    }
    return a;
}

}  // namespace

std::vector<Rational> poly_gcd(std::vector<Rational> a, std::vector<Rational> b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    if (is_zero_poly(a)) return b;
    if (is_zero_poly(b)) return a;
    while (!is_zero_poly(b)) {
        auto r = poly_mod(a, b);
        a = b;
        b = trim(std::move(r));
    }
    // normalize monic
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
    return a;
}

namespace {

// Durand-Kerner on normalized double coefficients
std::vector<std::complex<double>> all_roots(const std::vector<Rational>& coeffs) {
    std::vector<double> c;
    double scale = 0;
    for (const auto& q : coeffs) scale = std::max(scale, std::fabs(to_double(q)));
    if (scale == 0) return {};
    for (const auto& q : coeffs) c.push_back(to_double(q) / scale);
    while (c.size() > 1 && std::fabs(c.back()) < 1e-300) c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return {};
    std::vector<std::complex<double>> z(n);
    std::complex<double> seed(0.4, 0.9);
    z[0] = seed;
    for (int k = 1; k < n; ++k) z[k] = z[k - 1] * seed;
    auto eval = [&](std::complex<double> x) {
        std::complex<double> s = 0;
        for (int k = n; k >= 0; --k) s = s * x + c[k];
        return s;
    };
    for (int iter = 0; iter < 1000; ++iter) {
        double moved = 0;
        for (int k = 0; k < n; ++k) {
            std::complex<double> denom = c[n];
            for (int j = 0; j < n; ++j)
                if (j != k) denom *= z[k] - z[j];
            if (std::abs(denom) < 1e-300) continue;
            std::complex<double> delta = eval(z[k]) / denom;
            z[k] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

}  // namespace

RootResult rational_roots(const std::vector<Rational>& coeffs) {
    RootResult out;
    auto p = trim(coeffs);
    if (p.size() <= 1) return out;  // constants have no roots (zero poly handled upstream)
    auto check = [&](const Rational& r) {
        Rational s(0);
        for (std::size_t k = p.size(); k-- > 0;) s = s * r + p[k];
        return s == 0;
    };
    std::set<std::string> seen;
    for (auto z : all_roots(p)) {
        if (std::fabs(z.imag()) > 1e-7) continue;
        bool matched = false;
        for (unsigned long md : {16ul, 1024ul, 1000000ul, 1000000000ul}) {
            Rational cand = rationalize(z.real(), md);
            if (check(cand)) {
                std::string key = to_string(cand);
                if (!seen.count(key)) {
                    seen.insert(key);
                    out.rational_roots.push_back(cand);
                }
                matched = true;
                break;
            }
        }
        if (!matched) out.irrational_seen = true;
    }
    std::sort(out.rational_roots.begin(), out.rational_roots.end());
    return out;
}

namespace {

void collect_verified(const std::vector<MPoly>& polys, const std::vector<Rational>& point,
                      SystemSolveResult& res) {
    for (const auto& p : polys)
        if (p.eval(point) != 0) return;
    for (const auto& existing : res.rational_points)
        if (existing == point) return;
    res.rational_points.push_back(point);
}

// Complete rational points of `live` (nonzero, non-constant polynomials in
// nvars >= 1 variables), by successive resultant projection of variable 0.
SystemSolveResult eliminate_system(const std::vector<MPoly>& live, int nvars) {
    SystemSolveResult res;
    if (nvars == 1) {
        std::vector<Rational> g = {Rational(0)};
        for (const auto& p : live) g = poly_gcd(g, p.univariate(0));
        if (is_zero_poly(g)) {
            res.status = SystemSolveResult::Status::Incomplete;
            res.note = "positive-dimensional component";
            return res;
        }
        if (g.size() == 1) return res;  // nonzero constant gcd: no common roots
        RootResult roots = rational_roots(g);
        res.irrational_seen = roots.irrational_seen;
        for (const auto& r : roots.rational_roots) collect_verified(live, {r}, res);
        return res;
    }
    // project out variable 0
    std::vector<MPoly> projected;
    for (const auto& p : live)
        if (p.degree_in(0) == 0) projected.push_back(p);
    for (std::size_t i = 0; i < live.size(); ++i)
        for (std::size_t j = i + 1; j < live.size(); ++j) {
            if (live[i].degree_in(0) == 0 && live[j].degree_in(0) == 0) continue;
            MPoly r = resultant(live[i], live[j], 0);
            if (!r.is_zero()) projected.push_back(r);
        }
    if (projected.empty()) {
        res.status = SystemSolveResult::Status::Incomplete;
        res.note = "elimination degenerated";
        return res;
    }
    std::vector<MPoly> reduced;
    for (const auto& p : projected) {
        MPoly q(nvars - 1);
        for (const auto& [e, c] : p.terms()) {
            std::vector<int> e2(e.begin() + 1, e.end());
            q.add_term(e2, c);
        }
        if (!q.is_zero() && q.total_degree() > 0) reduced.push_back(q);
        if (!q.is_zero() && q.total_degree() == 0) return res;  // inconsistent projection
    }
    if (reduced.empty()) {
        res.status = SystemSolveResult::Status::Incomplete;
        res.note = "elimination degenerated";
        return res;
    }
    SystemSolveResult sub = eliminate_system(reduced, nvars - 1);
    res.status = sub.status;
    res.note = sub.note;
    res.irrational_seen = sub.irrational_seen;
    for (const auto& tail : sub.rational_points) {
        // slice: substitute the tail, solve the remaining univariate in var 0
        std::vector<MPoly> images;
        images.push_back(MPoly::variable(1, 0));
        for (int v = 1; v < nvars; ++v) images.push_back(MPoly::constant(1, tail[v - 1]));
        std::vector<MPoly> slice;
        bool const_nonzero = false;
        for (const auto& p : live) {
            MPoly q = p.compose(images);
            if (q.is_zero()) continue;
            if (q.total_degree() == 0) const_nonzero = true;
            slice.push_back(q);
        }
        if (const_nonzero) continue;  // tail not extendable
        if (slice.empty()) {
            res.status = SystemSolveResult::Status::Incomplete;
            res.note = "fiber over projected point is positive-dimensional";
            continue;
        }
        std::vector<Rational> g = {Rational(0)};
        for (const auto& p : slice) g = poly_gcd(g, p.univariate(0));
        if (is_zero_poly(g) || g.size() == 1) {
            if (is_zero_poly(g)) {
                res.status = SystemSolveResult::Status::Incomplete;
                res.note = "fiber over projected point is positive-dimensional";
            }
            continue;
        }
        RootResult roots = rational_roots(g);
        if (roots.irrational_seen) res.irrational_seen = true;
        for (const auto& r : roots.rational_roots) {
            std::vector<Rational> point;
            point.push_back(r);
            for (const auto& v : tail) point.push_back(v);
            collect_verified(live, point, res);
        }
    }
    return res;
}

}  // namespace

SystemSolveResult solve_small_system(const std::vector<MPoly>& polys, int nvars) {
    SystemSolveResult res;
    std::vector<MPoly> live;
    for (const auto& p : polys)
        if (!p.is_zero()) live.push_back(p);
    if (live.empty()) {
        res.status = SystemSolveResult::Status::EntireSpace;
        res.family_particular.assign(nvars, Rational(0));
        res.family_basis = RatMatrix::identity(nvars);
        return res;
    }

    // peel off affine-linear equations first with an exact linear solve
    std::vector<MPoly> linear, rest;
    for (const auto& p : live)
        (p.total_degree() <= 1 ? linear : rest).push_back(p);
    if (!linear.empty()) {
        RatMatrix a(linear.size(), nvars);
        std::vector<Rational> b(linear.size(), Rational(0));
        for (std::size_t r = 0; r < linear.size(); ++r) {
            for (const auto& [e, c] : linear[r].terms()) {
                int var = -1;
                for (int v = 0; v < nvars; ++v)
                    if (e[v] == 1) var = v;
                if (var < 0)
                    b[r] -= c;
                else
                    a(r, var) = c;
            }
        }
        LinearSolution sol = solve_linear(a, b);
        if (!sol.feasible) return res;  // Solved, empty
        const int k = static_cast<int>(sol.null_basis.cols());
        // substitute t = particular + N s into the remaining polynomials
        std::vector<MPoly> images;
        for (int v = 0; v < nvars; ++v) {
            MPoly img = MPoly::constant(k, sol.particular[v]);
            for (int s = 0; s < k; ++s) {
                MPoly term = MPoly::variable(k, s);
                img = img + MPoly::constant(k, sol.null_basis(v, s)) * term;
            }
            images.push_back(img);
        }
        std::vector<MPoly> reduced;
        for (const auto& p : rest) reduced.push_back(p.compose(images));
        SystemSolveResult sub = solve_small_system(reduced, k);
        res.status = sub.status;
        res.irrational_seen = sub.irrational_seen;
        res.note = sub.note;
        if (sub.status == SystemSolveResult::Status::EntireSpace) {
            if (k == 0) {
                res.status = SystemSolveResult::Status::Solved;
                res.rational_points.push_back(sol.particular);
                return res;
            }
            // an affine family survives: compose t = particular + N s with the
            // inner family s = s0 + B u
            const int fdim = static_cast<int>(sub.family_basis.cols());
            res.family_particular = sol.particular;
            for (int v = 0; v < nvars; ++v)
                for (int c = 0; c < k; ++c)
                    res.family_particular[v] += sol.null_basis(v, c) * sub.family_particular[c];
            res.family_basis = RatMatrix(nvars, fdim);
            for (int v = 0; v < nvars; ++v)
                for (int u = 0; u < fdim; ++u) {
                    Rational s(0);
                    for (int c = 0; c < k; ++c)
                        s += sol.null_basis(v, c) * sub.family_basis(c, u);
                    res.family_basis(v, u) = s;
                }
            return res;
        }
        for (const auto& s : sub.rational_points) {
            std::vector<Rational> t(nvars);
            for (int v = 0; v < nvars; ++v) {
                t[v] = sol.particular[v];
                for (int c = 0; c < k; ++c) t[v] += sol.null_basis(v, c) * s[c];
            }
            bool ok = true;
            for (const auto& p : polys)
                if (p.eval(t) != 0) ok = false;
            if (ok) res.rational_points.push_back(t);
        }
        return res;
    }

    // pure polynomial stage: no linear equations left
    if (nvars == 0) return res;  // nonzero constants: inconsistent, no points
    bool const_nonzero = false;
    for (const auto& p : live)
        if (p.total_degree() == 0) const_nonzero = true;
    if (const_nonzero) return res;
    SystemSolveResult stage = eliminate_system(live, nvars);
    res.status = stage.status;
    res.note = stage.note;
    res.irrational_seen = stage.irrational_seen;
    for (const auto& pt : stage.rational_points) {
        bool ok = true;
        for (const auto& p : polys)
            if (p.eval(pt) != 0) ok = false;
        if (ok) res.rational_points.push_back(pt);
    }
    return res;
}

std::vector<std::vector<double>> newton_multistart(const std::vector<MPoly>& polys, int nvars,
                                                   int starts, double tol) {
    std::vector<std::vector<double>> found;
    for (int seed = 0; seed < starts; ++seed) {
        std::mt19937_64 rng(20240801 + seed);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        std::vector<double> t(nvars);
        for (auto& v : t) v = dist(rng);
        // Gauss-Newton with Levenberg damping
        double lambda = 1e-3;
        for (int iter = 0; iter < 400; ++iter) {
            std::vector<double> r(polys.size());
            double rn = 0;
            for (std::size_t m = 0; m < polys.size(); ++m) {
                r[m] = polys[m].eval_double(t);
                rn += r[m] * r[m];
            }
            if (rn < tol * tol) break;
            // normal equations (J^T J + lambda I) dt = -J^T r
            std::vector<std::vector<double>> jtj(nvars, std::vector<double>(nvars, 0.0));
            std::vector<double> jtr(nvars, 0.0);
            for (std::size_t m = 0; m < polys.size(); ++m) {
                auto g = polys[m].gradient_double(t);
                for (int i = 0; i < nvars; ++i) {
                    jtr[i] += g[i] * r[m];
                    for (int j = 0; j < nvars; ++j) jtj[i][j] += g[i] * g[j];
                }
            }
            for (int i = 0; i < nvars; ++i) jtj[i][i] += lambda;
            // gaussian elimination
            std::vector<std::vector<double>> a = jtj;
            std::vector<double> b(nvars);
            for (int i = 0; i < nvars; ++i) b[i] = -jtr[i];
            bool ok = true;
            for (int col = 0; col < nvars && ok; ++col) {
                int piv = col;
                for (int rr = col + 1; rr < nvars; ++rr)
                    if (std::fabs(a[rr][col]) > std::fabs(a[piv][col])) piv = rr;
                if (std::fabs(a[piv][col]) < 1e-14) {
                    ok = false;
                    break;
                }
                std::swap(a[piv], a[col]);
                std::swap(b[piv], b[col]);
                for (int rr = 0; rr < nvars; ++rr) {
                    if (rr == col) continue;
                    double f = a[rr][col] / a[col][col];
                    for (int cc = col; cc < nvars; ++cc) a[rr][cc] -= f * a[col][cc];
                    b[rr] -= f * b[col];
                }
            }
            if (!ok) break;
            for (int i = 0; i < nvars; ++i) t[i] += b[i] / a[i][i];
        }
        double rn = 0;
        for (const auto& p : polys) {
            double v = p.eval_double(t);
            rn += v * v;
        }
        if (std::sqrt(rn) >= tol) continue;
        bool dup = false;
        for (const auto& f : found) {
            double d = 0;
            for (int v = 0; v < nvars; ++v) d += (f[v] - t[v]) * (f[v] - t[v]);
            if (std::sqrt(d) < 1e-6) dup = true;
        }
        if (!dup) found.push_back(t);
    }
    return found;
}

}  // namespace fingeo
