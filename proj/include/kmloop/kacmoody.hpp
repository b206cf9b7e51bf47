#ifndef KMLOOP_KACMOODY_HPP
#define KMLOOP_KACMOODY_HPP

#include <vector>

#include "kmloop/loopalg.hpp"

namespace kmloop {

/// Convention package for the double extension. The degree operator pairs
/// with the central cocycle: under the standard convention [d, f] = z f' and
/// omega(f, g) = cocycle_sign * Res<f, g'>. cocycle_sign = -1 (equivalently
/// omega(f, g) = <z f', g>_0) is the unique sign for which antisymmetry,
/// Jacobi and invariance of the bilinear form with <c, d> = 1 hold
/// simultaneously; it is pinned by the symbolic oracle suite.
struct KmConventions {
    Convention convention = Convention::standard;
    double lambda = 1.0;
    double cocycle_sign = -1.0;
};

/// Loop + central + degree component: f + r_c c + r_d d.
struct KacMoodyVector {
    LoopAlgebraElement loop;
    Complex r_c{0.0, 0.0};
    Complex r_d{0.0, 0.0};
    Convention convention = Convention::standard;
};

KacMoodyVector km_vector(LoopAlgebraElement loop, Complex r_c = {0.0, 0.0},
                         Complex r_d = {0.0, 0.0},
                         Convention convention = Convention::standard);

/// Central 2-cocycle omega(f,g) = sign * Res<f, g'> = sign * sum_k k lambda
/// tr(a_{-k} b_k).
Complex cocycle(const LoopAlgebraElement& f, const LoopAlgebraElement& g,
                const KmConventions& conv = {});

/// [x, y]: loop part [f,g]_0 + r_d D(g) - s_d D(f), central part omega(f,g),
/// degree part 0; c is central. D is d_action under the vector's convention.
KacMoodyVector km_bracket(const KacMoodyVector& x, const KacMoodyVector& y,
                          const KmConventions& conv = {});

/// Invariant bilinear form <f,g>_0 + r_c s_d + r_d s_c with
/// <f,g>_0 = sum_k lambda tr(a_k b_{-k}).
Complex km_form(const KacMoodyVector& x, const KacMoodyVector& y,
                const KmConventions& conv = {});

Complex h0_pairing(const LaurentMatrix& f, const LaurentMatrix& g, double lambda = 1.0);

/// ||f||_n + sqrt(|r_c|^2 + |r_d|^2): sup norm on the loop, Euclidean norm
/// on the double extension.
double km_norm(const KacMoodyVector& x, const GradingConfig& cfg);

/// Audit of ||ad(x) y||_n <= 6 pi e^{2n+1} ||x||_{n+1} ||y||_{n+1}
/// (paper_literal degree convention). bound_scale rescales the constant.
std::vector<TameRow> ad_tame_report(const KacMoodyVector& x, const KacMoodyVector& y,
                                    int n_from, int n_to, int boundary_samples = 1024,
                                    double bound_scale = 1.0, const KmConventions& conv = {});

}  // namespace kmloop

#endif
