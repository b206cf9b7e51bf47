#ifndef KMLOOP_LIEALG_HPP
#define KMLOOP_LIEALG_HPP

#include <optional>
#include <vector>

#include "kmloop/laurent.hpp"

namespace kmloop {

/// Finite-dimensional backend: the A-series sl(n, C) with compact form su(n),
/// invariant form lambda * tr(XY) on the diagonal torus.
struct LieBackend {
    char series = 'A';
    int n = 2;             // matrix size
    double lambda = 1.0;   // trace-form normalization, > 0

    Eigen::Index dim() const { return n; }
};

LieBackend make_backend(char series, int n, double lambda = 1.0);
bool same_backend(const LieBackend& a, const LieBackend& b);

/// Traceless check against the backend; throws InputError beyond 1e-12.
void validate_element(const LieBackend& backend, const Matrix& x);

Matrix bracket(const Matrix& x, const Matrix& y);
Complex trace_form(const LieBackend& backend, const Matrix& x, const Matrix& y);

/// Matrix exponential, scaling-and-squaring with a degree-13 Pade core.
Matrix mexp(const Matrix& x);

/// Principal matrix logarithm via diagonalization; eigenvalue arguments lie
/// in (-pi, pi]. Defective input (eigenvector condition number beyond 1e8)
/// raises BranchError.
Matrix mlog(const Matrix& m);

/// Diagram automorphism of the backend. Order 2 on the A-series acts by
/// X -> -X^T; order 1 is the identity.
struct DiagramAutomorphism {
    int order = 1;
};

DiagramAutomorphism make_automorphism(const LieBackend& backend, int order);
Matrix sigma_apply(const DiagramAutomorphism& aut, const Matrix& x);
Complex automorphism_root(const DiagramAutomorphism& aut);  // e^{2 pi i / order}

/// Whether a det-1 2x2 complex matrix lies in exp(sl(2,C)):
/// true iff tr M != -2, or M == -I.
bool in_exp_image_sl2(const Matrix& m);

struct TorusConjugation {
    Matrix p;  // M = p * diag(d) * p^{-1}; unitary for unitary input
    Matrix d;  // diagonal
};

/// Diagonalization with a deterministic eigenvalue order (descending
/// argument). Defective input raises NonSemisimpleError.
TorusConjugation conjugate_to_torus(const Matrix& m);

/// Element of the fixed diagonal maximal abelian subalgebra of su(n):
/// X = i diag(theta_1..theta_n), sum theta = 0.
struct SectionElement {
    Matrix x;
    bool alcove_reduced = false;

    std::vector<double> theta() const;
};

SectionElement make_section(const Matrix& x, bool alcove_reduced = false);

/// Affine Weyl translation lattice for the diagonal torus with loops
/// parameterized by t in [0, 2pi] (z = e^{it}): the loop
/// diag(z^{m_1}, ..., z^{m_n}), sum m = 0, shifts theta by the integer
/// vector m. The fundamental alcove is theta descending with
/// theta_1 - theta_n <= 1.
inline constexpr double kAlcoveLatticeStep = 1.0;

struct AlcoveReduction {
    SectionElement section;
    std::vector<int> translation;     // integers added to each theta
    std::vector<Eigen::Index> permutation;  // section theta[i] = input theta[perm[i]] + translation step
};

AlcoveReduction alcove_reduce_witness(const Matrix& x);
SectionElement alcove_reduce(const Matrix& x);

}  // namespace kmloop

#endif
