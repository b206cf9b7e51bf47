#include "kmloop/fixtures.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace kmloop {

std::uint64_t FixtureRng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double FixtureRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double FixtureRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int FixtureRng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

Complex FixtureRng::unit_complex() { return std::polar(1.0, uniform(0.0, 2.0 * M_PI)); }

Complex FixtureRng::disc_complex(double radius) {
    return std::polar(radius * std::sqrt(uniform()), uniform(0.0, 2.0 * M_PI));
}

LaurentMatrix random_laurent(FixtureRng& rng, Eigen::Index dim, int window_min, int window_max,
                             double scale) {
    std::vector<Matrix> coeffs;
    for (int k = window_min; k <= window_max; ++k) {
        Matrix c(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j)
                c(i, j) = Complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
        coeffs.push_back(std::move(c));
    }
    return LaurentMatrix(dim, window_min, std::move(coeffs));
}

LoopAlgebraElement random_loop_element(FixtureRng& rng, const FixtureSpec& spec) {
    const Eigen::Index d = spec.backend.dim();
    LaurentMatrix raw = random_laurent(rng, d, spec.window_min, spec.window_max, spec.scale);
    std::vector<Matrix> coeffs;
    for (int k = raw.k_min(); k <= raw.k_max(); ++k) {
        Matrix c = raw.coeff(k);
        c -= (c.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
        coeffs.push_back(std::move(c));
    }
    LoopAlgebraElement e{LaurentMatrix(d, raw.k_min(), std::move(coeffs)), spec.backend,
                         std::nullopt, false};
    if (spec.twist_order) e = twist_project(e, make_automorphism(spec.backend, *spec.twist_order));
    if (spec.real_form) e = reality_project(e);
    return e;
}

KacMoodyVector random_km_vector(FixtureRng& rng, const FixtureSpec& spec, double extension_scale,
                                Convention convention) {
    LoopAlgebraElement loop = random_loop_element(rng, spec);
    const Complex rc = rng.disc_complex(extension_scale);
    const Complex rd = rng.disc_complex(extension_scale);
    return KacMoodyVector{std::move(loop), rc, rd, convention};
}

namespace {

Matrix random_rank1_projector(FixtureRng& rng, Eigen::Index dim) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        v(i) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    if (v.norm() < 1e-6) v(0) = Complex(1.0, 0.0);
    v.normalize();
    return v * v.adjoint();
}

// (I - P) + z P: unitary on |z| = 1, value I at z = 1, determinant z.
LaurentMatrix blaschke_factor(const Matrix& p, int degree) {
    const Eigen::Index d = p.rows();
    const Matrix id = Matrix::Identity(d, d);
    if (degree >= 0)
        return LaurentMatrix(d, 0, {id - p, p});
    return LaurentMatrix(d, -1, {p, id - p});
}

}  // namespace

LoopGroupElement random_based_unitary_loop(FixtureRng& rng, Eigen::Index dim, int factors) {
    LaurentMatrix acc = LaurentMatrix::identity(dim);
    for (int i = 0; i < factors; ++i) {
        acc = lmul(acc, blaschke_factor(random_rank1_projector(rng, dim), +1));
        acc = lmul(acc, blaschke_factor(random_rank1_projector(rng, dim), -1));
    }
    return certify_group_element(std::move(acc));
}

LoopGroupElement random_group_element(FixtureRng& rng, Eigen::Index dim, int factors) {
    Matrix c(dim, dim);
    Complex det;
    do {
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j)
                c(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        det = c.determinant();
    } while (std::abs(det) < 0.05);
    c *= std::pow(Complex(1.0, 0.0) / det, 1.0 / static_cast<double>(dim));
    LaurentMatrix acc = LaurentMatrix::monomial(c, 0);
    for (int i = 0; i < factors; ++i) {
        acc = lmul(acc, blaschke_factor(random_rank1_projector(rng, dim), +1));
        acc = lmul(acc, blaschke_factor(random_rank1_projector(rng, dim), -1));
    }
    return certify_group_element(std::move(acc));
}

SectionElement random_alcove_section(FixtureRng& rng, Eigen::Index dim) {
    std::vector<double> theta(static_cast<size_t>(dim));
    for (double& t : theta) t = rng.uniform(0.0, 0.49 * kAlcoveLatticeStep);
    double mean = 0.0;
    for (double t : theta) mean += t;
    mean /= static_cast<double>(dim);
    for (double& t : theta) t -= mean;
    std::sort(theta.begin(), theta.end(), std::greater<>());
    Matrix x = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) x(i, i) = Complex(0.0, theta[static_cast<size_t>(i)]);
    return SectionElement{x, true};
}

}  // namespace kmloop
