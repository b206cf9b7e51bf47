#ifndef KMLOOP_ORACLES_HPP
#define KMLOOP_ORACLES_HPP

#include <map>
#include <vector>

#include "kmloop/liealg.hpp"

// Independent brute-force and exact-rational oracles. These deliberately do
// not share arithmetic kernels with the main modules: everything here is a
// separate, simple, slow implementation used to mint expected values and to
// pin convention signs before the main build is trusted.

namespace kmloop::oracle {

struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n);  // NOLINT: implicit integer literal conversion is the point
    Rat(long long n, long long d);
};

Rat operator+(Rat a, Rat b);
Rat operator-(Rat a, Rat b);
Rat operator*(Rat a, Rat b);
Rat operator-(Rat a);
bool operator==(Rat a, Rat b);

struct RatC {
    Rat re, im;
};

RatC operator+(const RatC& a, const RatC& b);
RatC operator-(const RatC& a, const RatC& b);
RatC operator*(const RatC& a, const RatC& b);
RatC operator-(const RatC& a);
bool operator==(const RatC& a, const RatC& b);
bool is_zero(const RatC& a);

struct SymMatrix {
    int d = 0;
    std::vector<RatC> a;

    SymMatrix() = default;
    explicit SymMatrix(int dim);
    RatC& at(int i, int j);
    const RatC& at(int i, int j) const;
};

SymMatrix sym_mul(const SymMatrix& x, const SymMatrix& y);
SymMatrix sym_add(const SymMatrix& x, const SymMatrix& y);
SymMatrix sym_neg(const SymMatrix& x);
SymMatrix sym_scale(const RatC& s, const SymMatrix& x);
RatC sym_trace_product(const SymMatrix& x, const SymMatrix& y);
bool sym_is_zero(const SymMatrix& x);

/// Exact Laurent polynomial with rational-complex matrix coefficients.
struct SymLaurent {
    int d = 0;
    std::map<int, SymMatrix> terms;  // absent degree means zero

    SymLaurent() = default;
    explicit SymLaurent(int dim) : d(dim) {}
};

SymLaurent sym_monomial(const SymMatrix& a, int k);
SymLaurent sym_ladd(const SymLaurent& f, const SymLaurent& g);
SymLaurent sym_lneg(const SymLaurent& f);
SymLaurent sym_lscale(const RatC& s, const SymLaurent& f);
SymLaurent sym_lmul(const SymLaurent& f, const SymLaurent& g);
SymLaurent sym_lbracket(const SymLaurent& f, const SymLaurent& g);
SymLaurent sym_degree_action(const SymLaurent& f);  // z d/dz
bool sym_lis_zero(const SymLaurent& f);
bool sym_lequal(const SymLaurent& f, const SymLaurent& g);

/// Res<f, g'> = sum_k k tr(a_{-k} b_k), the raw cocycle ingredient.
RatC sym_res_pairing(const SymLaurent& f, const SymLaurent& g);

/// H^0 pairing sum_k tr(a_k b_{-k}).
RatC sym_h0_pairing(const SymLaurent& f, const SymLaurent& g);

struct SymKmVector {
    SymLaurent loop;
    RatC r_c, r_d;
};

/// Bracket with degree operator z d/dz and cocycle sign * Res<f, g'>.
SymKmVector sym_km_bracket(const SymKmVector& x, const SymKmVector& y, int cocycle_sign);

/// <f,g>_0 + r_c s_d + r_d s_c.
RatC sym_km_form(const SymKmVector& x, const SymKmVector& y);

bool sym_km_is_zero(const SymKmVector& x);
bool sym_km_equal(const SymKmVector& x, const SymKmVector& y);

/// Adjoint action of the diagonal winding loop g = diag(z^{w_1},...,z^{w_n})
/// (sum w = 0) with candidate signs: the c-part is
/// r_c + pair_sign <A,B>_0 + half_sign r_d (1/2) <B,B>_0, B = i diag(w).
SymKmVector sym_adjoint_winding(const std::vector<int>& winding, const SymKmVector& y,
                                int pair_sign, int half_sign);

struct PinnedSigns {
    int cocycle_sign = 0;   // s in omega = s Res<f, g'>
    int pair_sign = 0;      // sign of <A,B>_0 in the Adjoint c-part
    int half_sign = 0;      // sign of (1/2)<B,B>_0 in the Adjoint c-part
};

/// Determines the unique sign package for which, on sl(2) monomial
/// generators, the bracket is antisymmetric and Jacobi, the bilinear form
/// with <c,d> = 1 is ad-invariant, and the Adjoint action of diagonal
/// winding loops is a form isometry and a group action. Everything is exact
/// rational arithmetic; throws if no unique package survives.
PinnedSigns pin_conventions();

/// Slow, independent evaluation sum_k a_k z^k by repeated powers.
Matrix oracle_eval(const LaurentMatrix& f, Complex z);

/// Dense boundary sampling estimate of sup_{A_n} |f| (spectral norm).
double oracle_norm_sup(const LaurentMatrix& f, int n, int samples_per_circle = 1 << 14);

/// exp(2 pi i a_{-1}) for a 1-form with exactly commuting coefficients;
/// rejects non-commuting input.
Matrix oracle_abelian_monodromy(const LaurentMatrix& alpha);

/// Exhaustive alcove reduction over permutations and integer translations
/// with |m_j| <= search_radius; diagnostic error if the optimum touches the
/// search boundary.
SectionElement oracle_alcove(const Matrix& x, int search_radius);

}  // namespace kmloop::oracle

#endif
