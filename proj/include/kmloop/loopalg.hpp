#ifndef KMLOOP_LOOPALG_HPP
#define KMLOOP_LOOPALG_HPP

#include <optional>
#include <vector>

#include "kmloop/liealg.hpp"

namespace kmloop {

/// Element of the loop algebra: a traceless-coefficient Laurent loop with
/// optional twist and compact-real-form flags. Flags are validated at
/// construction (and on demand); the bracket propagates them.
struct LoopAlgebraElement {
    LaurentMatrix value;
    LieBackend backend;
    std::optional<DiagramAutomorphism> twist;
    bool real_form = false;
};

/// Validates backend membership and any set flags; throws on violation.
/// Twist: sigma(a_k) = omega^k a_k. Reality: a_k = -conj(a_{-k})^T.
LoopAlgebraElement make_loop_element(LaurentMatrix value, const LieBackend& backend,
                                     std::optional<DiagramAutomorphism> twist = std::nullopt,
                                     bool real_form = false, double tol = 1e-11);

/// Largest violation over all invariants implied by the flags (debug aid).
double flag_violation(const LoopAlgebraElement& f);

/// Pointwise bracket by coefficient convolution; twist and reality both cut
/// out subalgebras, so the flags propagate.
LoopAlgebraElement lbracket(const LoopAlgebraElement& f, const LoopAlgebraElement& g);

/// Per-degree projector P(a_k) = (1/m) sum_j omega^{-jk} sigma^j(a_k) onto
/// the twisted subspace; idempotent, exact on output.
LoopAlgebraElement twist_project(const LoopAlgebraElement& f, const DiagramAutomorphism& aut);

/// Pairwise projector (a_k, a_{-k}) -> ((a_k - conj(a_{-k})^T)/2, ...) onto
/// the compact real form; idempotent, fixes valid inputs.
LoopAlgebraElement reality_project(const LoopAlgebraElement& f);

struct TameRow {
    int n = 0;
    double lhs = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
};

/// Audit of ||f'||_n <= (e^{n+1}/(e-1)) ||f||_{n+1} across a grading range.
/// bound_scale rescales the constant (used by the falsification self-test).
std::vector<TameRow> tame_report_deriv(const LoopAlgebraElement& f, int n_from, int n_to,
                                       int boundary_samples = 1024, double bound_scale = 1.0);

}  // namespace kmloop

#endif
