#include "fingeo/linalg.hpp"

#include <stdexcept>

namespace fingeo {

Rref rref(const RatMatrix& m, bool want_transform) {
    Rref out;
    out.mat = m;
    RatMatrix t = RatMatrix::identity(m.rows());
    const std::size_t nr = m.rows(), nc = m.cols();
    std::size_t lead = 0;
    for (std::size_t col = 0; col < nc && lead < nr; ++col) {
        std::size_t piv = lead;
        while (piv < nr && out.mat(piv, col) == 0) ++piv;
        if (piv == nr) continue;
        if (piv != lead) {
            for (std::size_t j = 0; j < nc; ++j) std::swap(out.mat(piv, j), out.mat(lead, j));
            for (std::size_t j = 0; j < nr; ++j) std::swap(t(piv, j), t(lead, j));
        }
        Rational inv = 1 / out.mat(lead, col);
        for (std::size_t j = 0; j < nc; ++j) out.mat(lead, j) *= inv;
        for (std::size_t j = 0; j < nr; ++j) t(lead, j) *= inv;
        for (std::size_t r = 0; r < nr; ++r) {
            if (r == lead) continue;
            Rational f = out.mat(r, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j < nc; ++j) out.mat(r, j) -= f * out.mat(lead, j);
            for (std::size_t j = 0; j < nr; ++j) t(r, j) -= f * t(lead, j);
        }
        out.pivot_cols.push_back(col);
        ++lead;
    }
    if (want_transform) out.transform = std::move(t);
    return out;
}

std::size_t rank(const RatMatrix& m) { return rref(m).rank(); }

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    Rref r = rref(m, true);
    if (r.rank() != m.rows()) return std::nullopt;
    return r.transform;
}

RatMatrix null_space(const RatMatrix& m) {
    Rref r = rref(m);
    const std::size_t nc = m.cols();
    std::vector<bool> is_pivot(nc, false);
    for (auto c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < nc; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    RatMatrix basis(nc, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        basis(free_cols[k], k) = 1;
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
            basis(r.pivot_cols[i], k) = -r.mat(i, free_cols[k]);
    }
    return basis;
}

LinearSolution solve_linear(const RatMatrix& a, const std::vector<Rational>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: rhs size mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    Rref r = rref(aug, true);
    LinearSolution sol;
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
        if (r.pivot_cols[i] == a.cols()) {
            // 0 = 1 row: export the combination of input rows that produced it
            sol.feasible = false;
            sol.certificate = r.transform->row(i);
            return sol;
        }
    }
    sol.feasible = true;
    sol.particular.assign(a.cols(), Rational(0));
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
        sol.particular[r.pivot_cols[i]] = r.mat(i, a.cols());
    sol.null_basis = null_space(a);
    return sol;
}

bool column_span_contains(const RatMatrix& big, const RatMatrix& sub) {
    if (sub.cols() == 0) return true;
    std::size_t rb = rank(big);
    return rank(hcat(big, sub)) == rb;
}

RatMatrix hcat(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() == 0 && a.cols() == 0) return b;
    if (b.rows() == 0 && b.cols() == 0) return a;
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
    RatMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

}  // namespace fingeo
