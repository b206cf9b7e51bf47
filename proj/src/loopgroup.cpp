#include "kmloop/loopgroup.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace kmloop {

namespace {

double det_defect(const LaurentMatrix& mat) {
    const LaurentMatrix det = laurent_det(mat);
    double worst = 0.0;
    for (int k = det.k_min(); k <= det.k_max(); ++k) {
        const Complex want = k == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
        worst = std::max(worst, std::abs(det.coeff(k)(0, 0) - want));
    }
    return worst;
}

}  // namespace

LoopGroupElement certify_group_element(LaurentMatrix mat, double tol) {
    const double defect = det_defect(mat);
    if (defect > tol) {
        std::ostringstream msg;
        msg << "certify_group_element: det != 1 (coefficient defect " << defect << ")";
        throw InputError(msg.str());
    }
    return LoopGroupElement{std::move(mat), true};
}

LoopGroupElement group_identity(Eigen::Index dim) {
    return LoopGroupElement{LaurentMatrix::identity(dim), true};
}

LoopGroupElement gmul(const LoopGroupElement& a, const LoopGroupElement& b) {
    if (!a.det_certified || !b.det_certified) throw InputError("gmul: uncertified operand");
    return certify_group_element(lmul(a.mat, b.mat));
}

LoopGroupElement ginv(const LoopGroupElement& a) {
    if (!a.det_certified) throw InputError("ginv: uncertified operand");
    // det == 1, so the inverse is exactly the adjugate.
    return certify_group_element(laurent_adjugate(a.mat));
}

LaurentMatrix log_derivative(const LoopGroupElement& g) {
    if (!g.det_certified) throw InputError("log_derivative: uncertified operand");
    return lmul(laurent_adjugate(g.mat), lderiv(g.mat));
}

GexpResult gexp(const LoopAlgebraElement& f, int window_min, int window_max,
                double fit_radius_log, int samples_per_circle, double tol) {
    if (window_min > window_max) throw InputError("gexp: empty window");
    const double r = std::exp(fit_radius_log);
    CircleSamples inner{1.0 / r, {}}, outer{r, {}};
    inner.values.reserve(static_cast<size_t>(samples_per_circle));
    outer.values.reserve(static_cast<size_t>(samples_per_circle));
    for (int i = 0; i < samples_per_circle; ++i) {
        const double theta = 2.0 * M_PI * static_cast<double>(i) / samples_per_circle;
        inner.values.push_back(mexp(evaluate(f.value, std::polar(inner.radius, theta))));
        outer.values.push_back(mexp(evaluate(f.value, std::polar(outer.radius, theta))));
    }
    FitResult fit = fit_from_samples(inner, outer, window_min, window_max);
    if (fit.residual > tol) {
        std::ostringstream msg;
        msg << "gexp: exp(f) does not fit the window [" << window_min << ", " << window_max
            << "] (residual " << fit.residual << ")";
        throw TruncationError(msg.str(), fit.residual);
    }
    return GexpResult{certify_group_element(std::move(fit.value), std::max(1e-11, 16.0 * fit.residual)),
                      fit.residual};
}

Complex SampledLoop::point(size_t i) const {
    return std::polar(radius, 2.0 * M_PI * static_cast<double>(i) / samples.size());
}

namespace {

// Per-arc multiplier for the right system dg = g alpha dz along the unit
// circle from angle phi0 to phi1: fourth-order two-point Gauss-Magnus,
// exp((A1 + A2)/2 + (sqrt3/12) [A1, A2]) with A_i = alpha(z_i) z'(s_i).
Matrix arc_multiplier(const LaurentMatrix& alpha, double phi0, double phi1) {
    const double dphi = phi1 - phi0;
    const double offset = std::sqrt(3.0) / 6.0;
    const Complex z1 = std::polar(1.0, phi0 + (0.5 - offset) * dphi);
    const Complex z2 = std::polar(1.0, phi0 + (0.5 + offset) * dphi);
    const Matrix a1 = evaluate(alpha, z1) * (Complex(0.0, 1.0) * dphi * z1);
    const Matrix a2 = evaluate(alpha, z2) * (Complex(0.0, 1.0) * dphi * z2);
    return mexp(0.5 * (a1 + a2) + (std::sqrt(3.0) / 12.0) * (a1 * a2 - a2 * a1));
}

// One traversal of the unit circle: right-ordered product of arc multipliers.
Matrix transport_once(const LaurentMatrix& alpha, int steps) {
    const Eigen::Index d = alpha.dim();
    Matrix m = Matrix::Identity(d, d);
    for (int j = 0; j < steps; ++j) {
        const double phi0 = 2.0 * M_PI * j / static_cast<double>(steps);
        const double phi1 = 2.0 * M_PI * (j + 1) / static_cast<double>(steps);
        m = m * arc_multiplier(alpha, phi0, phi1);
    }
    return m;
}

}  // namespace

MonodromyResult monodromy(const LoopAlgebraElement& alpha, int steps) {
    if (steps < 256) throw InputError("monodromy: steps must be >= 256");
    constexpr int kMaxSteps = 1 << 20;
    constexpr double kStepTol = 1e-10;
    constexpr double kIntegrableTol = 1e-8;

    Matrix coarse = transport_once(alpha.value, steps);
    int n = steps;
    while (true) {
        const Matrix fine = transport_once(alpha.value, 2 * n);
        const double diff = (fine - coarse).cwiseAbs().maxCoeff();
        if (diff < kStepTol) {
            // The Gauss-Magnus rule is fourth order; one Richardson step.
            const Matrix extrapolated = fine + (fine - coarse) / 15.0;
            const Eigen::Index d = alpha.value.dim();
            const double dist = spectral_norm(extrapolated - Matrix::Identity(d, d));
            return MonodromyResult{extrapolated, residue(alpha.value), dist <= kIntegrableTol,
                                   2 * n, diff};
        }
        if (2 * n >= kMaxSteps) {
            std::ostringstream msg;
            msg << "monodromy: no convergence at " << 2 * n
                << " steps (last two estimates differ by " << diff << ")";
            throw ConvergenceError(msg.str());
        }
        coarse = fine;
        n *= 2;
    }
}

IntegrateResult integrate_form(const LoopAlgebraElement& alpha, const Matrix& g0, int steps) {
    if (steps < 2) throw InputError("integrate_form: steps must be >= 2");
    if (g0.rows() != alpha.value.dim() || g0.cols() != alpha.value.dim())
        throw DimensionMismatch("integrate_form: g0 shape mismatch");
    if (std::abs(g0.determinant()) < 1e-300) throw InputError("integrate_form: g0 must be invertible");

    MonodromyResult verdict = monodromy(alpha, std::max(steps, 256));
    if (!verdict.integrable) {
        throw MonodromyObstruction("integrate_form: non-vanishing period", verdict.transport);
    }

    SampledLoop loop;
    loop.radius = 1.0;
    loop.samples.reserve(static_cast<size_t>(steps));
    Matrix g = g0;
    loop.samples.push_back(g);
    for (int j = 0; j < steps; ++j) {
        const double phi0 = 2.0 * M_PI * j / static_cast<double>(steps);
        const double phi1 = 2.0 * M_PI * (j + 1) / static_cast<double>(steps);
        g = g * arc_multiplier(alpha.value, phi0, phi1);
        if (j + 1 < steps) loop.samples.push_back(g);
    }
    const double defect = (g - g0).cwiseAbs().maxCoeff();
    return IntegrateResult{std::move(loop), defect, std::move(verdict)};
}

}  // namespace kmloop
