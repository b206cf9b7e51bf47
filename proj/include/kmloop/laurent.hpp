#ifndef KMLOOP_LAURENT_HPP
#define KMLOOP_LAURENT_HPP

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "kmloop/errors.hpp"

namespace kmloop {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Matrix-valued Laurent polynomial on C*, f(z) = sum_k a_k z^k.
///
/// Coefficient arithmetic is exact: sums, products and derivatives grow the
/// degree window as needed and never truncate. The canonical form trims
/// exactly-zero edge coefficients; the zero element is stored as a single
/// zero coefficient at degree 0.
class LaurentMatrix {
public:
    LaurentMatrix() : LaurentMatrix(1) {}
    explicit LaurentMatrix(Eigen::Index dim);

    /// Builds sum_k coeffs[k - k_min] z^k and canonicalizes.
    LaurentMatrix(Eigen::Index dim, int k_min, std::vector<Matrix> coeffs);

    static LaurentMatrix zero(Eigen::Index dim) { return LaurentMatrix(dim); }
    static LaurentMatrix identity(Eigen::Index dim);
    static LaurentMatrix monomial(const Matrix& a, int k);
    static LaurentMatrix scalar_monomial(Complex a, int k);

    Eigen::Index dim() const { return dim_; }
    int k_min() const { return k_min_; }
    int k_max() const { return k_min_ + static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const;

    /// Coefficient a_k; the zero matrix outside the stored window.
    Matrix coeff(int k) const;
    bool in_window(int k) const { return k >= k_min() && k <= k_max(); }
    const std::vector<Matrix>& coeffs() const { return coeffs_; }

    LaurentMatrix& operator+=(const LaurentMatrix& rhs);
    LaurentMatrix& operator-=(const LaurentMatrix& rhs);
    LaurentMatrix& operator*=(Complex s);

private:
    void canonicalize();

    Eigen::Index dim_;
    int k_min_;
    std::vector<Matrix> coeffs_;
};

LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix operator-(const LaurentMatrix& a);
LaurentMatrix operator*(Complex s, const LaurentMatrix& a);

/// Pointwise product: (lmul(a,b))(z) = a(z) b(z), by coefficient convolution.
LaurentMatrix lmul(const LaurentMatrix& a, const LaurentMatrix& b);

/// d/dz, exact on coefficients: a_k -> k a_k at degree k-1.
LaurentMatrix lderiv(const LaurentMatrix& f);

enum class Convention { standard, paper_literal };

/// Derivation used for the degree operator: standard is z f'(z)
/// (coefficients k a_k), paper_literal is i z f'(z) (coefficients i k a_k).
LaurentMatrix d_action(const LaurentMatrix& f, Convention convention);

/// Coefficient a_{-1} (residue ingredient).
Matrix residue(const LaurentMatrix& f);

/// Horner evaluation in z and 1/z. z must be nonzero.
Matrix evaluate(const LaurentMatrix& f, Complex z);

/// f(z) -> f(zw): coefficients a_k -> a_k w^k. w must be nonzero.
LaurentMatrix shift_arg(const LaurentMatrix& f, Complex w);

/// Determinant as a scalar (1x1) Laurent polynomial, exact.
LaurentMatrix laurent_det(const LaurentMatrix& f);

/// Adjugate matrix, exact; laurent_det(f) * I == lmul(f, laurent_adjugate(f)).
LaurentMatrix laurent_adjugate(const LaurentMatrix& f);

/// Annulus grading A_n = { e^{-n} <= |z| <= e^n }; sup norms are sampled on
/// the two boundary circles (maximum principle).
struct GradingConfig {
    int n = 0;
    int boundary_samples = 1024;

    GradingConfig() = default;
    GradingConfig(int n_, int samples = 1024);
};

/// Certified enclosure of a boundary sup: lower is the sampled maximum (a
/// true lower bound), upper adds a Lipschitz slack from a coefficient bound
/// on f' along each circle.
struct SupEstimate {
    double lower = 0.0;
    double upper = 0.0;
};

SupEstimate norm_sup_interval(const LaurentMatrix& f, const GradingConfig& cfg);

/// Sampled sup of the spectral norm over the boundary of A_n (lower bound).
double norm_sup(const LaurentMatrix& f, const GradingConfig& cfg);
double norm_sup(const LaurentMatrix& f, int n, int boundary_samples = 1024);

enum class CoeffNormFlavor { l1, linf };

/// Exponential-sequence norms of the paired coefficients: with
/// b_k = max(|a_k|, |a_{-k}|) for k >= 0, l1 is sum_k e^{nk} b_k and
/// linf is sup_k e^{nk} b_k.
double norm_coeff(const LaurentMatrix& f, int n, CoeffNormFlavor flavor);

/// Mean of |f| over each boundary circle of A_n against normalized angular
/// measure dtheta/2pi; returns the larger of the two circles.
double norm_l1_boundary(const LaurentMatrix& f, const GradingConfig& cfg);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Partial sum of d(f,g) = sum_n 2^{-n} ||f-g||_n / (1 + ||f-g||_n) over
/// n < n_terms, with the rigorous tail bound 2^{-(n_terms-1)} added to the
/// upper endpoint.
Interval frechet_metric(const LaurentMatrix& f, const LaurentMatrix& g, int n_terms,
                        int boundary_samples = 1024);

/// Equispaced matrix samples on the circle |z| = radius, starting at angle 0.
struct CircleSamples {
    double radius = 1.0;
    std::vector<Matrix> values;
};

struct FitResult {
    LaurentMatrix value;
    double residual = 0.0;  // max entrywise deviation over all samples
};

/// Least-squares recovery of Laurent coefficients in [k_min, k_max] from
/// samples on two circles. Each circle must carry at least
/// 2*(k_max - k_min + 1) samples. The residual is exact roundoff when the
/// sampled function is a Laurent polynomial inside the window; a large
/// residual signals out-of-window content.
FitResult fit_from_samples(const CircleSamples& inner, const CircleSamples& outer,
                           int k_min, int k_max);

double spectral_norm(const Matrix& m);

}  // namespace kmloop

#endif
