#ifndef KMLOOP_POLAR_HPP
#define KMLOOP_POLAR_HPP

#include <vector>

#include "kmloop/kacmoody.hpp"
#include "kmloop/loopgroup.hpp"

namespace kmloop {

/// Group element acting on the double extension: a loop with a central fiber
/// coordinate w_c (inert in the Adjoint action) and an argument-shift
/// coordinate w_d != 0.
struct KacMoodyGroupElement {
    LoopGroupElement g;
    Complex w_c{1.0, 0.0};
    Complex w_d{1.0, 0.0};
};

KacMoodyGroupElement km_group_element(LoopGroupElement g, Complex w_c = {1.0, 0.0},
                                      Complex w_d = {1.0, 0.0});

/// Gauge action on connections, g . u = g u g^{-1} - (D_t g) g^{-1} with the
/// circle-parameter derivative D_t = i z d/dz (z = e^{it}, t in [0, 2pi]).
/// Exact when g is a certified Laurent loop. The result's twist/reality
/// flags are not inferred.
LoopAlgebraElement gauge_action(const LoopGroupElement& g, const LoopAlgebraElement& u);

/// Transport of the right system dh/dt = h u(e^{it}) over [0, 2pi]:
/// trail[j] = h(2 pi j / steps), trail[steps] = full transport. This is the
/// transport whose conjugacy class is constant on gauge orbits.
std::vector<Matrix> circle_transport_trail(const LoopAlgebraElement& u, int steps);
Matrix circle_transport(const LoopAlgebraElement& u, int steps);

/// Max deviation of u from anti-Hermitian values on the unit circle.
double compact_value_defect(const LoopAlgebraElement& u, int samples = 256);

struct GaugeResult {
    SectionElement section;
    SampledLoop gauge;
    double residual = 0.0;       // H^0 norm of gauge_action(g, u) - section
    double constancy_defect = 0.0;
    std::vector<Complex> monodromy_eigenvalues;
};

/// Gauges a compact-valued connection to a constant section element in the
/// fundamental alcove: transports h' = h u, conjugates the transport into the
/// diagonal torus, takes the (1/2pi) principal logarithm, alcove-reduces, and
/// assembles the gauge loop. Requires semisimple (numerically unitary)
/// transport.
GaugeResult normalize_to_section(const LoopAlgebraElement& u, int steps);

/// Gated twisted variant: only order-2 A-series twists are recognized, and
/// the section is the sigma-fixed part of the diagonal torus, which is zero
/// for this realization; any genuinely twisted input is rejected.
GaugeResult normalize_to_section_twisted(const LoopAlgebraElement& u,
                                         const DiagramAutomorphism& aut, int steps);

/// Adjoint action of (g, w_c, w_d) on f + r_c c + r_d d. With
/// A = g f(z w_d) g^{-1} and B = (D_t g) g^{-1}:
///   loop  = A - r_d B
///   c     = r_c + <A, B>_0 - r_d (1/2) <B, B>_0
///   d     = r_d
/// The sign of the (1/2)<B,B>_0 term is pinned by the oracle suite: it is the
/// unique choice making the action a form isometry and a group action.
KacMoodyVector hat_adjoint(const KacMoodyGroupElement& x, const KacMoodyVector& y,
                           const KmConventions& conv = {});

/// Eigenvalues of the circle transport, sorted by descending argument;
/// equal multisets certify gauge equivalence.
std::vector<Complex> orbit_invariants(const LoopAlgebraElement& u, int steps = 4096);

/// Deterministic enumeration of affine Weyl images of a section element:
/// permutations combined with integer lattice translations (sum zero),
/// ordered by translation shell.
std::vector<SectionElement> affine_weyl_orbit(const SectionElement& x, int count);

}  // namespace kmloop

#endif
