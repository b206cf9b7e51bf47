#include "kmloop/laurent.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace kmloop {

namespace {

bool exactly_zero(const Matrix& m) { return m.isZero(0.0); }

}  // namespace

LaurentMatrix::LaurentMatrix(Eigen::Index dim) : dim_(dim), k_min_(0) {
    if (dim < 1) throw InputError("LaurentMatrix: dim must be positive");
    coeffs_.push_back(Matrix::Zero(dim, dim));
}

LaurentMatrix::LaurentMatrix(Eigen::Index dim, int k_min, std::vector<Matrix> coeffs)
    : dim_(dim), k_min_(k_min), coeffs_(std::move(coeffs)) {
    if (dim < 1) throw InputError("LaurentMatrix: dim must be positive");
    if (coeffs_.empty()) {
        k_min_ = 0;
        coeffs_.push_back(Matrix::Zero(dim, dim));
    }
    for (const Matrix& c : coeffs_) {
        if (c.rows() != dim || c.cols() != dim)
            throw DimensionMismatch("LaurentMatrix: coefficient shape does not match dim");
    }
    canonicalize();
}

LaurentMatrix LaurentMatrix::identity(Eigen::Index dim) {
    return monomial(Matrix::Identity(dim, dim), 0);
}

LaurentMatrix LaurentMatrix::monomial(const Matrix& a, int k) {
    if (a.rows() != a.cols()) throw DimensionMismatch("monomial: matrix must be square");
    return LaurentMatrix(a.rows(), k, {a});
}

LaurentMatrix LaurentMatrix::scalar_monomial(Complex a, int k) {
    Matrix m(1, 1);
    m(0, 0) = a;
    return LaurentMatrix(1, k, {m});
}

bool LaurentMatrix::is_zero() const {
    return coeffs_.size() == 1 && exactly_zero(coeffs_[0]);
}

Matrix LaurentMatrix::coeff(int k) const {
    if (!in_window(k)) return Matrix::Zero(dim_, dim_);
    return coeffs_[static_cast<size_t>(k - k_min_)];
}

void LaurentMatrix::canonicalize() {
    size_t lo = 0, hi = coeffs_.size();
    while (hi - lo > 1 && exactly_zero(coeffs_[hi - 1])) --hi;
    while (hi - lo > 1 && exactly_zero(coeffs_[lo])) ++lo;
    if (lo == 0 && hi == coeffs_.size()) {
        if (coeffs_.size() == 1 && exactly_zero(coeffs_[0])) k_min_ = 0;
        return;
    }
    std::vector<Matrix> trimmed(coeffs_.begin() + static_cast<long>(lo),
                                coeffs_.begin() + static_cast<long>(hi));
    k_min_ += static_cast<int>(lo);
    coeffs_ = std::move(trimmed);
    if (coeffs_.size() == 1 && exactly_zero(coeffs_[0])) k_min_ = 0;
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& rhs) {
    *this = *this + rhs;
    return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& rhs) {
    *this = *this - rhs;
    return *this;
}

LaurentMatrix& LaurentMatrix::operator*=(Complex s) {
    for (Matrix& c : coeffs_) c *= s;
    canonicalize();
    return *this;
}

LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("operator+: dim mismatch");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int k_min = std::min(a.k_min(), b.k_min());
    const int k_max = std::max(a.k_max(), b.k_max());
    std::vector<Matrix> coeffs;
    coeffs.reserve(static_cast<size_t>(k_max - k_min + 1));
    for (int k = k_min; k <= k_max; ++k) coeffs.push_back(a.coeff(k) + b.coeff(k));
    return LaurentMatrix(a.dim(), k_min, std::move(coeffs));
}

LaurentMatrix operator-(const LaurentMatrix& a) {
    LaurentMatrix r = a;
    r *= Complex(-1.0, 0.0);
    return r;
}

LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b) { return a + (-b); }

LaurentMatrix operator*(Complex s, const LaurentMatrix& a) {
    LaurentMatrix r = a;
    r *= s;
    return r;
}

LaurentMatrix lmul(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("lmul: dim mismatch");
    const Eigen::Index d = a.dim();
    if (a.is_zero() || b.is_zero()) return LaurentMatrix::zero(d);
    const int k_min = a.k_min() + b.k_min();
    const int k_max = a.k_max() + b.k_max();
    std::vector<Matrix> coeffs(static_cast<size_t>(k_max - k_min + 1), Matrix::Zero(d, d));
    for (int j = a.k_min(); j <= a.k_max(); ++j) {
        const Matrix& aj = a.coeff(j);
        if (exactly_zero(aj)) continue;
        for (int k = b.k_min(); k <= b.k_max(); ++k) {
            coeffs[static_cast<size_t>(j + k - k_min)].noalias() += aj * b.coeff(k);
        }
    }
    return LaurentMatrix(d, k_min, std::move(coeffs));
}

LaurentMatrix lderiv(const LaurentMatrix& f) {
    if (f.is_zero()) return LaurentMatrix::zero(f.dim());
    std::vector<Matrix> coeffs;
    coeffs.reserve(static_cast<size_t>(f.k_max() - f.k_min() + 1));
    for (int k = f.k_min(); k <= f.k_max(); ++k) coeffs.push_back(static_cast<double>(k) * f.coeff(k));
    return LaurentMatrix(f.dim(), f.k_min() - 1, std::move(coeffs));
}

LaurentMatrix d_action(const LaurentMatrix& f, Convention convention) {
    const Complex scale = convention == Convention::paper_literal ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
    if (f.is_zero()) return LaurentMatrix::zero(f.dim());
    std::vector<Matrix> coeffs;
    coeffs.reserve(static_cast<size_t>(f.k_max() - f.k_min() + 1));
    for (int k = f.k_min(); k <= f.k_max(); ++k)
        coeffs.push_back((scale * static_cast<double>(k)) * f.coeff(k));
    return LaurentMatrix(f.dim(), f.k_min(), std::move(coeffs));
}

Matrix residue(const LaurentMatrix& f) { return f.coeff(-1); }

Matrix evaluate(const LaurentMatrix& f, Complex z) {
    if (z == Complex(0.0, 0.0)) throw InputError("evaluate: z must be nonzero");
    const Eigen::Index d = f.dim();
    Matrix result = Matrix::Zero(d, d);
    // Non-negative degrees: Horner in z over [0, k_max].
    if (f.k_max() >= 0) {
        Matrix p = f.coeff(f.k_max());
        for (int k = f.k_max() - 1; k >= 0; --k) p = p * z + f.coeff(k);
        result += p;
    }
    // Negative degrees: Horner in 1/z over [k_min, -1].
    if (f.k_min() < 0) {
        const Complex w = Complex(1.0, 0.0) / z;
        Matrix q = f.coeff(f.k_min());
        for (int k = f.k_min() + 1; k <= -1; ++k) q = q * w + f.coeff(k);
        result += q * w;
    }
    return result;
}

LaurentMatrix shift_arg(const LaurentMatrix& f, Complex w) {
    if (w == Complex(0.0, 0.0)) throw InputError("shift_arg: w must be nonzero");
    if (f.is_zero()) return f;
    std::vector<Matrix> coeffs;
    coeffs.reserve(static_cast<size_t>(f.k_max() - f.k_min() + 1));
    for (int k = f.k_min(); k <= f.k_max(); ++k) coeffs.push_back(std::pow(w, k) * f.coeff(k));
    return LaurentMatrix(f.dim(), f.k_min(), std::move(coeffs));
}

namespace {

LaurentMatrix entry(const LaurentMatrix& f, Eigen::Index i, Eigen::Index j) {
    std::vector<Matrix> coeffs;
    for (int k = f.k_min(); k <= f.k_max(); ++k) {
        Matrix c(1, 1);
        c(0, 0) = f.coeff(k)(i, j);
        coeffs.push_back(c);
    }
    return LaurentMatrix(1, f.k_min(), std::move(coeffs));
}

LaurentMatrix scalar_det(const LaurentMatrix& f, const std::vector<Eigen::Index>& rows,
                         const std::vector<Eigen::Index>& cols) {
    if (rows.size() == 1) return entry(f, rows[0], cols[0]);
    LaurentMatrix acc = LaurentMatrix::zero(1);
    double sign = 1.0;
    for (size_t c = 0; c < cols.size(); ++c) {
        std::vector<Eigen::Index> sub_rows(rows.begin() + 1, rows.end());
        std::vector<Eigen::Index> sub_cols;
        for (size_t cc = 0; cc < cols.size(); ++cc)
            if (cc != c) sub_cols.push_back(cols[cc]);
        acc += Complex(sign, 0.0) * lmul(entry(f, rows[0], cols[c]), scalar_det(f, sub_rows, sub_cols));
        sign = -sign;
    }
    return acc;
}

}  // namespace

LaurentMatrix laurent_det(const LaurentMatrix& f) {
    std::vector<Eigen::Index> idx(static_cast<size_t>(f.dim()));
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Eigen::Index>(i);
    return scalar_det(f, idx, idx);
}

LaurentMatrix laurent_adjugate(const LaurentMatrix& f) {
    const Eigen::Index d = f.dim();
    if (d == 1) return LaurentMatrix::identity(1);
    // adj(i,j) = (-1)^{i+j} det(minor with row j, col i removed)
    std::vector<LaurentMatrix> entries;
    entries.reserve(static_cast<size_t>(d * d));
    int k_min = 0, k_max = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            std::vector<Eigen::Index> rows, cols;
            for (Eigen::Index r = 0; r < d; ++r)
                if (r != j) rows.push_back(r);
            for (Eigen::Index c = 0; c < d; ++c)
                if (c != i) cols.push_back(c);
            LaurentMatrix e = scalar_det(f, rows, cols);
            if ((i + j) % 2 == 1) e *= Complex(-1.0, 0.0);
            k_min = std::min(k_min, e.k_min());
            k_max = std::max(k_max, e.k_max());
            entries.push_back(std::move(e));
        }
    }
    std::vector<Matrix> coeffs(static_cast<size_t>(k_max - k_min + 1), Matrix::Zero(d, d));
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            const LaurentMatrix& e = entries[static_cast<size_t>(i * d + j)];
            for (int k = e.k_min(); k <= e.k_max(); ++k)
                coeffs[static_cast<size_t>(k - k_min)](i, j) = e.coeff(k)(0, 0);
        }
    return LaurentMatrix(d, k_min, std::move(coeffs));
}

GradingConfig::GradingConfig(int n_, int samples) : n(n_), boundary_samples(samples) {
    if (n < 0) throw InputError("GradingConfig: annulus index must be non-negative");
    if (boundary_samples < 64) throw InputError("GradingConfig: boundary_samples must be >= 64");
}

double spectral_norm(const Matrix& m) { return m.jacobiSvd().singularValues()(0); }

namespace {

double circle_sup(const LaurentMatrix& f, double radius, int samples) {
    double sup = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double theta = 2.0 * M_PI * static_cast<double>(i) / samples;
        const Complex z = std::polar(radius, theta);
        sup = std::max(sup, spectral_norm(evaluate(f, z)));
    }
    return sup;
}

// sup_{|z|=r} |f'(z)| <= sum_k |k| |a_k| r^{k-1}, a certified coefficient bound.
double derivative_bound_on_circle(const LaurentMatrix& f, double radius) {
    double bound = 0.0;
    for (int k = f.k_min(); k <= f.k_max(); ++k) {
        if (k == 0) continue;
        bound += std::abs(k) * spectral_norm(f.coeff(k)) * std::pow(radius, k - 1);
    }
    return bound;
}

}  // namespace

SupEstimate norm_sup_interval(const LaurentMatrix& f, const GradingConfig& cfg) {
    GradingConfig checked(cfg.n, cfg.boundary_samples);
    const double r_out = std::exp(static_cast<double>(cfg.n));
    const double r_in = 1.0 / r_out;
    double lower = std::max(circle_sup(f, r_out, cfg.boundary_samples),
                            circle_sup(f, r_in, cfg.boundary_samples));
    // Worst sample-to-extremum arc is half the spacing, pi r / N.
    const double slack = std::max(
        derivative_bound_on_circle(f, r_out) * M_PI * r_out / cfg.boundary_samples,
        derivative_bound_on_circle(f, r_in) * M_PI * r_in / cfg.boundary_samples);
    return SupEstimate{lower, lower + slack};
}

double norm_sup(const LaurentMatrix& f, const GradingConfig& cfg) {
    return norm_sup_interval(f, cfg).lower;
}

double norm_sup(const LaurentMatrix& f, int n, int boundary_samples) {
    return norm_sup(f, GradingConfig(n, boundary_samples));
}

double norm_coeff(const LaurentMatrix& f, int n, CoeffNormFlavor flavor) {
    if (n < 0) throw InputError("norm_coeff: n must be non-negative");
    const int k_top = std::max(std::abs(f.k_min()), std::abs(f.k_max()));
    double l1 = 0.0, linf = 0.0;
    for (int k = 0; k <= k_top; ++k) {
        const double b = std::max(spectral_norm(f.coeff(k)), spectral_norm(f.coeff(-k)));
        const double w = std::exp(static_cast<double>(n) * k) * b;
        l1 += w;
        linf = std::max(linf, w);
    }
    return flavor == CoeffNormFlavor::l1 ? l1 : linf;
}

double norm_l1_boundary(const LaurentMatrix& f, const GradingConfig& cfg) {
    GradingConfig checked(cfg.n, cfg.boundary_samples);
    const double r_out = std::exp(static_cast<double>(cfg.n));
    double best = 0.0;
    for (double radius : {r_out, 1.0 / r_out}) {
        double mean = 0.0;
        for (int i = 0; i < cfg.boundary_samples; ++i) {
            const double theta = 2.0 * M_PI * static_cast<double>(i) / cfg.boundary_samples;
            mean += spectral_norm(evaluate(f, std::polar(radius, theta)));
        }
        best = std::max(best, mean / cfg.boundary_samples);
    }
    return best;
}

Interval frechet_metric(const LaurentMatrix& f, const LaurentMatrix& g, int n_terms,
                        int boundary_samples) {
    if (f.dim() != g.dim()) throw DimensionMismatch("frechet_metric: dim mismatch");
    if (n_terms < 1) throw InputError("frechet_metric: n_terms must be positive");
    const LaurentMatrix diff = f - g;
    double lower = 0.0, upper = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        const SupEstimate est = norm_sup_interval(diff, GradingConfig(n, boundary_samples));
        const double w = std::pow(0.5, n);
        lower += w * est.lower / (1.0 + est.lower);
        upper += w * est.upper / (1.0 + est.upper);
    }
    // Every summand is < 2^{-n}, so the tail past n_terms is < 2^{-(n_terms-1)}.
    upper += std::pow(0.5, n_terms - 1);
    return Interval{lower, upper};
}

FitResult fit_from_samples(const CircleSamples& inner, const CircleSamples& outer,
                           int k_min, int k_max) {
    if (k_min > k_max) throw InputError("fit_from_samples: empty window");
    const int width = k_max - k_min + 1;
    if (static_cast<int>(inner.values.size()) < 2 * width ||
        static_cast<int>(outer.values.size()) < 2 * width)
        throw InputError("fit_from_samples: underdetermined window (need >= 2*window samples per circle)");
    if (inner.values.empty() || outer.values.empty())
        throw InputError("fit_from_samples: empty sample set");
    const Eigen::Index d = inner.values[0].rows();
    for (const auto& v : inner.values)
        if (v.rows() != d || v.cols() != d) throw DimensionMismatch("fit_from_samples: ragged samples");
    for (const auto& v : outer.values)
        if (v.rows() != d || v.cols() != d) throw DimensionMismatch("fit_from_samples: ragged samples");

    const Eigen::Index rows = static_cast<Eigen::Index>(inner.values.size() + outer.values.size());
    Matrix vander(rows, width);
    std::vector<Complex> points;
    points.reserve(static_cast<size_t>(rows));
    for (size_t i = 0; i < inner.values.size(); ++i)
        points.push_back(std::polar(inner.radius, 2.0 * M_PI * static_cast<double>(i) / inner.values.size()));
    for (size_t i = 0; i < outer.values.size(); ++i)
        points.push_back(std::polar(outer.radius, 2.0 * M_PI * static_cast<double>(i) / outer.values.size()));
    for (Eigen::Index r = 0; r < rows; ++r)
        for (int k = k_min; k <= k_max; ++k)
            vander(r, k - k_min) = std::pow(points[static_cast<size_t>(r)], k);

    Matrix rhs(rows, d * d);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Matrix& sample = static_cast<size_t>(r) < inner.values.size()
                                   ? inner.values[static_cast<size_t>(r)]
                                   : outer.values[static_cast<size_t>(r) - inner.values.size()];
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) rhs(r, i * d + j) = sample(i, j);
    }

    Eigen::ColPivHouseholderQR<Matrix> qr(vander);
    Matrix sol = qr.solve(rhs);
    const Matrix resid = vander * sol - rhs;
    const double residual = resid.cwiseAbs().maxCoeff();

    std::vector<Matrix> coeffs;
    coeffs.reserve(static_cast<size_t>(width));
    for (int k = k_min; k <= k_max; ++k) {
        Matrix c(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) c(i, j) = sol(k - k_min, i * d + j);
        coeffs.push_back(std::move(c));
    }
    return FitResult{LaurentMatrix(d, k_min, std::move(coeffs)), residual};
}

}  // namespace kmloop
