#include "kmloop/polar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <Eigen/Dense>

namespace kmloop {

KacMoodyGroupElement km_group_element(LoopGroupElement g, Complex w_c, Complex w_d) {
    if (w_d == Complex(0.0, 0.0)) throw InputError("km_group_element: w_d must be nonzero");
    return KacMoodyGroupElement{std::move(g), w_c, w_d};
}

LoopAlgebraElement gauge_action(const LoopGroupElement& g, const LoopAlgebraElement& u) {
    if (g.mat.dim() != u.value.dim()) throw DimensionMismatch("gauge_action: dim mismatch");
    const LoopGroupElement gi = ginv(g);
    // D_t g = i z g'(z), degree-preserving with coefficients i k a_k.
    const LaurentMatrix dt_g = d_action(g.mat, Convention::paper_literal);
    LaurentMatrix value = lmul(lmul(g.mat, u.value), gi.mat) - lmul(dt_g, gi.mat);
    return LoopAlgebraElement{std::move(value), u.backend, std::nullopt, false};
}

namespace {

// Fourth-order two-point Gauss-Magnus multiplier for dh/dt = h u(e^{it}) on
// [t0, t1]: exp((A1 + A2)/2 + (sqrt3/12)[A1, A2]) with A_i = u(e^{it_i}) dt.
Matrix t_arc_multiplier(const LaurentMatrix& u, double t0, double t1) {
    const double dt = t1 - t0;
    const double offset = std::sqrt(3.0) / 6.0;
    const Matrix a1 = evaluate(u, std::polar(1.0, t0 + (0.5 - offset) * dt)) * dt;
    const Matrix a2 = evaluate(u, std::polar(1.0, t0 + (0.5 + offset) * dt)) * dt;
    return mexp(0.5 * (a1 + a2) + (std::sqrt(3.0) / 12.0) * (a1 * a2 - a2 * a1));
}

}  // namespace

std::vector<Matrix> circle_transport_trail(const LoopAlgebraElement& u, int steps) {
    if (steps < 16) throw InputError("circle_transport: steps must be >= 16");
    const Eigen::Index d = u.value.dim();
    std::vector<Matrix> trail;
    trail.reserve(static_cast<size_t>(steps) + 1);
    Matrix h = Matrix::Identity(d, d);
    trail.push_back(h);
    for (int j = 0; j < steps; ++j) {
        const double t0 = 2.0 * M_PI * j / static_cast<double>(steps);
        const double t1 = 2.0 * M_PI * (j + 1) / static_cast<double>(steps);
        h = h * t_arc_multiplier(u.value, t0, t1);
        trail.push_back(h);
    }
    return trail;
}

Matrix circle_transport(const LoopAlgebraElement& u, int steps) {
    return circle_transport_trail(u, steps).back();
}

double compact_value_defect(const LoopAlgebraElement& u, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Matrix v = evaluate(u.value, std::polar(1.0, 2.0 * M_PI * i / static_cast<double>(samples)));
        worst = std::max(worst, (v + v.adjoint()).cwiseAbs().maxCoeff());
    }
    return worst;
}

namespace {

std::vector<Complex> sorted_eigenvalues(const Matrix& m) {
    Eigen::ComplexEigenSolver<Matrix> es(m, false);
    if (es.info() != Eigen::Success) throw NonSemisimpleError("eigenvalue computation failed");
    std::vector<Complex> vals(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(vals.begin(), vals.end(), [](Complex a, Complex b) {
        const double aa = std::arg(a), ab = std::arg(b);
        if (std::abs(aa - ab) > 1e-14) return aa > ab;
        return std::abs(a) > std::abs(b);
    });
    return vals;
}

Matrix permutation_matrix(const std::vector<Eigen::Index>& perm, bool fix_det) {
    const Eigen::Index d = static_cast<Eigen::Index>(perm.size());
    Matrix v = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) v(i, perm[static_cast<size_t>(i)]) = 1.0;
    if (fix_det && v.determinant().real() < 0.0) v.row(0) *= -1.0;
    return v;
}

}  // namespace

GaugeResult normalize_to_section(const LoopAlgebraElement& u, int steps) {
    const Eigen::Index d = u.value.dim();
    const double compact_defect = compact_value_defect(u);
    if (compact_defect > 1e-8)
        throw InputError("normalize_to_section: connection is not compact-valued on the circle");

    const std::vector<Matrix> trail = circle_transport_trail(u, steps);
    const Matrix transport = trail.back();

    const TorusConjugation tc = conjugate_to_torus(transport);
    Matrix q = tc.p;
    // Scale to det 1; a constant phase does not change any gauge quantity.
    const Complex detq = q.determinant();
    q *= std::pow(Complex(1.0, 0.0) / detq, 1.0 / static_cast<double>(d));

    // theta from the principal logarithm of the torus part; branch freedom is
    // exactly the integer lattice, fixed below by the alcove reduction.
    std::vector<double> theta(static_cast<size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) theta[static_cast<size_t>(i)] = std::arg(tc.d(i, i)) / (2.0 * M_PI);
    double total = std::accumulate(theta.begin(), theta.end(), 0.0);
    const int whole = static_cast<int>(std::lround(total));
    for (int k = 0; k < std::abs(whole); ++k) {
        auto it = whole > 0 ? std::max_element(theta.begin(), theta.end())
                            : std::min_element(theta.begin(), theta.end());
        *it -= whole > 0 ? 1.0 : -1.0;
    }
    total = std::accumulate(theta.begin(), theta.end(), 0.0);
    for (double& t : theta) t -= total / static_cast<double>(d);  // roundoff cleanup

    Matrix x_tilde = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) x_tilde(i, i) = Complex(0.0, theta[static_cast<size_t>(i)]);

    const AlcoveReduction red = alcove_reduce_witness(x_tilde);
    Matrix x_shifted = x_tilde;
    for (Eigen::Index i = 0; i < d; ++i)
        x_shifted(i, i) += Complex(0.0, static_cast<double>(red.translation[static_cast<size_t>(i)]));
    const Matrix v = permutation_matrix(red.permutation, true);

    // g(t) = V exp(-t X') Q^{-1} h(t) gauges u to the alcove representative.
    const Matrix q_inv = q.inverse();
    SampledLoop gauge;
    gauge.radius = 1.0;
    gauge.samples.reserve(static_cast<size_t>(steps));
    for (int j = 0; j < steps; ++j) {
        const double t = 2.0 * M_PI * j / static_cast<double>(steps);
        gauge.samples.push_back(v * mexp(-t * x_shifted) * q_inv * trail[static_cast<size_t>(j)]);
    }

    // Honest residual: finite-difference the sampled gauge loop and measure
    // how far g.u is from the constant section.
    const Matrix& x_sec = red.section.x;
    const double dt = 2.0 * M_PI / static_cast<double>(steps);
    const int n = steps;
    auto at = [&](int j) -> const Matrix& {
        return gauge.samples[static_cast<size_t>(((j % n) + n) % n)];
    };
    double sum_sq = 0.0, constancy = 0.0;
    std::vector<Matrix> gauged(static_cast<size_t>(n));
    Matrix mean = Matrix::Zero(d, d);
    for (int j = 0; j < n; ++j) {
        const Matrix dg = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * dt);
        const Matrix gi = at(j).inverse();
        const Matrix uz = evaluate(u.value, std::polar(1.0, dt * j));
        gauged[static_cast<size_t>(j)] = at(j) * uz * gi - dg * gi;
        mean += gauged[static_cast<size_t>(j)];
        sum_sq += (gauged[static_cast<size_t>(j)] - x_sec).squaredNorm();
    }
    mean /= static_cast<double>(n);
    for (int j = 0; j < n; ++j)
        constancy = std::max(constancy, (gauged[static_cast<size_t>(j)] - mean).cwiseAbs().maxCoeff());

    GaugeResult result;
    result.section = red.section;
    result.gauge = std::move(gauge);
    result.residual = std::sqrt(sum_sq / static_cast<double>(n));
    result.constancy_defect = constancy;
    result.monodromy_eigenvalues = sorted_eigenvalues(transport);
    return result;
}

GaugeResult normalize_to_section_twisted(const LoopAlgebraElement& u,
                                         const DiagramAutomorphism& aut, int steps) {
    if (aut.order == 1) return normalize_to_section(u, steps);
    if (aut.order != 2 || u.backend.series != 'A')
        throw InputError("normalize_to_section_twisted: only order-2 A-series twists are recognized");
    // The sigma-fixed part of the diagonal torus is zero for X -> -X^T, so
    // this realization has no nontrivial twisted section to normalize to.
    throw DegeneracyError(
        "normalize_to_section_twisted: the sigma-fixed diagonal section is trivial for the "
        "A-series; twisted normalization is gated off");
}

KacMoodyVector hat_adjoint(const KacMoodyGroupElement& x, const KacMoodyVector& y,
                           const KmConventions& conv) {
    if (y.convention != Convention::standard)
        throw InputError("hat_adjoint: y must carry the standard convention");
    const LoopGroupElement gi = ginv(x.g);
    const LaurentMatrix shifted = shift_arg(y.loop.value, x.w_d);
    const LaurentMatrix a = lmul(lmul(x.g.mat, shifted), gi.mat);
    const LaurentMatrix b = lmul(d_action(x.g.mat, Convention::paper_literal), gi.mat);

    LaurentMatrix loop = a - y.r_d * b;
    const Complex c = y.r_c + h0_pairing(a, b, conv.lambda) -
                      y.r_d * 0.5 * h0_pairing(b, b, conv.lambda);
    LoopAlgebraElement loop_elem{std::move(loop), y.loop.backend, std::nullopt, false};
    return KacMoodyVector{std::move(loop_elem), c, y.r_d, y.convention};
}

std::vector<Complex> orbit_invariants(const LoopAlgebraElement& u, int steps) {
    return sorted_eigenvalues(circle_transport(u, steps));
}

std::vector<SectionElement> affine_weyl_orbit(const SectionElement& x, int count) {
    const Eigen::Index d = x.x.rows();
    const std::vector<double> theta = x.theta();
    std::vector<SectionElement> orbit;

    // Translation shells: integer vectors with entries in [-rho, rho], sum 0.
    for (int rho = 0; static_cast<int>(orbit.size()) < count; ++rho) {
        std::vector<std::vector<int>> shifts;
        std::vector<int> cur(static_cast<size_t>(d), 0);
        std::function<void(Eigen::Index, int)> enumerate = [&](Eigen::Index pos, int sum) {
            if (pos == d) {
                if (sum == 0) {
                    const int maxabs = std::abs(*std::max_element(
                        cur.begin(), cur.end(), [](int a, int b) { return std::abs(a) < std::abs(b); }));
                    if (maxabs == rho) shifts.push_back(cur);
                }
                return;
            }
            for (int v2 = -rho; v2 <= rho; ++v2) {
                cur[static_cast<size_t>(pos)] = v2;
                enumerate(pos + 1, sum + v2);
            }
        };
        enumerate(0, 0);
        if (shifts.empty() && rho > 0) continue;

        std::vector<Eigen::Index> perm(static_cast<size_t>(d));
        for (const std::vector<int>& m : shifts) {
            std::iota(perm.begin(), perm.end(), 0);
            do {
                Matrix img = Matrix::Zero(d, d);
                for (Eigen::Index i = 0; i < d; ++i)
                    img(i, i) = Complex(
                        0.0, theta[static_cast<size_t>(perm[static_cast<size_t>(i)])] +
                                 kAlcoveLatticeStep * m[static_cast<size_t>(perm[static_cast<size_t>(i)])]);
                orbit.push_back(SectionElement{img, false});
                if (static_cast<int>(orbit.size()) >= count) return orbit;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    return orbit;
}

}  // namespace kmloop
