#include "kmloop/loopalg.hpp"

#include <cmath>

namespace kmloop {

namespace {

double twist_violation(const LaurentMatrix& v, const DiagramAutomorphism& aut) {
    const Complex omega = automorphism_root(aut);
    double worst = 0.0;
    for (int k = v.k_min(); k <= v.k_max(); ++k) {
        const Matrix lhs = sigma_apply(aut, v.coeff(k));
        const Matrix rhs = std::pow(omega, k) * v.coeff(k);
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
}

double reality_violation(const LaurentMatrix& v) {
    double worst = 0.0;
    const int k_top = std::max(std::abs(v.k_min()), std::abs(v.k_max()));
    for (int k = 0; k <= k_top; ++k) {
        const Matrix lhs = v.coeff(k);
        const Matrix rhs = -v.coeff(-k).conjugate().transpose();
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
}

double traceless_violation(const LaurentMatrix& v) {
    double worst = 0.0;
    for (int k = v.k_min(); k <= v.k_max(); ++k) worst = std::max(worst, std::abs(v.coeff(k).trace()));
    return worst;
}

}  // namespace

LoopAlgebraElement make_loop_element(LaurentMatrix value, const LieBackend& backend,
                                     std::optional<DiagramAutomorphism> twist, bool real_form,
                                     double tol) {
    if (value.dim() != backend.dim())
        throw DimensionMismatch("make_loop_element: loop dimension does not match backend");
    LoopAlgebraElement e{std::move(value), backend, twist, real_form};
    const double v = flag_violation(e);
    if (v > tol) throw InputError("make_loop_element: flagged invariants violated");
    return e;
}

double flag_violation(const LoopAlgebraElement& f) {
    double worst = traceless_violation(f.value);
    if (f.twist) worst = std::max(worst, twist_violation(f.value, *f.twist));
    if (f.real_form) worst = std::max(worst, reality_violation(f.value));
    return worst;
}

LoopAlgebraElement lbracket(const LoopAlgebraElement& f, const LoopAlgebraElement& g) {
    if (!same_backend(f.backend, g.backend)) throw InputError("lbracket: backend mismatch");
    if (f.twist.has_value() != g.twist.has_value() ||
        (f.twist && f.twist->order != g.twist->order))
        throw InputError("lbracket: twist flags are incompatible");

    const Eigen::Index d = f.backend.dim();
    const LaurentMatrix& a = f.value;
    const LaurentMatrix& b = g.value;
    if (a.is_zero() || b.is_zero())
        return LoopAlgebraElement{LaurentMatrix::zero(d), f.backend, f.twist,
                                  f.real_form && g.real_form};
    const int k_min = a.k_min() + b.k_min();
    const int k_max = a.k_max() + b.k_max();
    std::vector<Matrix> coeffs(static_cast<size_t>(k_max - k_min + 1), Matrix::Zero(d, d));
    for (int j = a.k_min(); j <= a.k_max(); ++j) {
        const Matrix aj = a.coeff(j);
        if (aj.isZero(0.0)) continue;
        for (int k = b.k_min(); k <= b.k_max(); ++k) {
            const Matrix bk = b.coeff(k);
            coeffs[static_cast<size_t>(j + k - k_min)].noalias() += aj * bk - bk * aj;
        }
    }
    return LoopAlgebraElement{LaurentMatrix(d, k_min, std::move(coeffs)), f.backend, f.twist,
                              f.real_form && g.real_form};
}

LoopAlgebraElement twist_project(const LoopAlgebraElement& f, const DiagramAutomorphism& aut) {
    const LaurentMatrix& v = f.value;
    const Complex omega = automorphism_root(aut);
    const int m = aut.order;
    std::vector<Matrix> coeffs;
    coeffs.reserve(static_cast<size_t>(v.k_max() - v.k_min() + 1));
    for (int k = v.k_min(); k <= v.k_max(); ++k) {
        Matrix p = Matrix::Zero(v.dim(), v.dim());
        Matrix power = v.coeff(k);
        for (int j = 0; j < m; ++j) {
            p += std::pow(omega, -j * k) * power;
            power = sigma_apply(aut, power);
        }
        coeffs.push_back(p / static_cast<double>(m));
    }
    return LoopAlgebraElement{LaurentMatrix(v.dim(), v.k_min(), std::move(coeffs)), f.backend,
                              aut, f.real_form};
}

LoopAlgebraElement reality_project(const LoopAlgebraElement& f) {
    const LaurentMatrix& v = f.value;
    if (v.is_zero()) return LoopAlgebraElement{v, f.backend, f.twist, true};
    const int k_top = std::max(std::abs(v.k_min()), std::abs(v.k_max()));
    std::vector<Matrix> coeffs(static_cast<size_t>(2 * k_top + 1));
    for (int k = -k_top; k <= k_top; ++k)
        coeffs[static_cast<size_t>(k + k_top)] =
            0.5 * (v.coeff(k) - v.coeff(-k).conjugate().transpose());
    return LoopAlgebraElement{LaurentMatrix(v.dim(), -k_top, std::move(coeffs)), f.backend,
                              f.twist, true};
}

std::vector<TameRow> tame_report_deriv(const LoopAlgebraElement& f, int n_from, int n_to,
                                       int boundary_samples, double bound_scale) {
    if (n_from > n_to) throw InputError("tame_report_deriv: empty range");
    const LaurentMatrix df = lderiv(f.value);
    std::vector<TameRow> rows;
    for (int n = n_from; n <= n_to; ++n) {
        const double lhs = norm_sup(df, GradingConfig(n, boundary_samples));
        const double constant = std::exp(n + 1.0) / (std::exp(1.0) - 1.0);
        const double bound =
            bound_scale * constant * norm_sup(f.value, GradingConfig(n + 1, boundary_samples));
        rows.push_back(TameRow{n, lhs, bound, bound > 0.0 ? lhs / bound : 0.0});
    }
    return rows;
}

}  // namespace kmloop
