#ifndef KMLOOP_LOOPGROUP_HPP
#define KMLOOP_LOOPGROUP_HPP

#include <vector>

#include "kmloop/loopalg.hpp"

namespace kmloop {

/// Laurent-polynomial matrix loop with determinant identically 1. The
/// certificate is an exact scalar-Laurent determinant check, which also
/// guarantees closure under inverse via the adjugate.
struct LoopGroupElement {
    LaurentMatrix mat;
    bool det_certified = false;
};

/// Certifies det(mat) == 1 as a Laurent polynomial (coefficients within tol)
/// and wraps the loop; throws InputError otherwise.
LoopGroupElement certify_group_element(LaurentMatrix mat, double tol = 1e-11);

LoopGroupElement group_identity(Eigen::Index dim);

LoopGroupElement gmul(const LoopGroupElement& a, const LoopGroupElement& b);
LoopGroupElement ginv(const LoopGroupElement& a);

/// Logarithmic derivative delta(g) = g^{-1} g' (d/dz convention); exact,
/// with traceless values since det == 1.
LaurentMatrix log_derivative(const LoopGroupElement& g);

/// Pointwise exponential sampled on the circles |z| = e^{-m}, e^{m} and
/// refit into [window_min, window_max]. Exact (residual at roundoff) when
/// exp(f(z)) terminates, e.g. nilpotent-valued f; otherwise the residual
/// reports the out-of-window content and values above tol raise
/// TruncationError.
struct GexpResult {
    LoopGroupElement element;
    double residual = 0.0;
};

GexpResult gexp(const LoopAlgebraElement& f, int window_min, int window_max,
                double fit_radius_log = 1.0, int samples_per_circle = 512,
                double tol = 1e-8);

/// Loop sampled at equispaced angles on |z| = radius, starting at angle 0.
struct SampledLoop {
    double radius = 1.0;
    std::vector<Matrix> samples;

    Complex point(size_t i) const;
};

struct MonodromyResult {
    Matrix transport;
    Matrix residue_coeff;
    bool integrable = false;
    int step_count = 0;
    double error_estimate = 0.0;
};

/// Parallel transport of the right system dg = g alpha dz once around
/// |z| = 1: ordered product of exp(alpha(midpoint) dz) per arc, refined by
/// step doubling (Richardson extrapolated) until successive transports agree
/// to 1e-10, capped at 2^20 steps. alpha is integrable to a single-valued
/// loop iff the transport is the identity (tolerance 1e-8).
MonodromyResult monodromy(const LoopAlgebraElement& alpha, int steps = 256);

struct IntegrateResult {
    SampledLoop loop;
    double closure_defect = 0.0;
    MonodromyResult verdict;
};

/// Solves dg = g alpha dz along the unit circle with g(1) = g0. Throws
/// MonodromyObstruction (carrying the transport) when alpha is not
/// integrable.
IntegrateResult integrate_form(const LoopAlgebraElement& alpha, const Matrix& g0, int steps);

}  // namespace kmloop

#endif
