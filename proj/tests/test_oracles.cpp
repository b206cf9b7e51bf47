#include <doctest.h>

#include <cmath>

#include "kmloop/oracles.hpp"
#include "test_helpers.hpp"

using namespace kmloop;
using namespace kmloop::oracle;
using kmloop::testing::scalar_laurent;
using kmloop::testing::sl2_h;

TEST_SUITE_BEGIN("oracles");

namespace {

SymMatrix sym_from_ints(int d, std::initializer_list<int> entries) {
    SymMatrix m(d);
    int idx = 0;
    for (int v : entries) {
        m.a[static_cast<size_t>(idx)] = RatC{Rat(v), Rat(0)};
        ++idx;
    }
    return m;
}

SymMatrix sym_e() { return sym_from_ints(2, {0, 1, 0, 0}); }
SymMatrix sym_f() { return sym_from_ints(2, {0, 0, 1, 0}); }
SymMatrix sym_h() { return sym_from_ints(2, {1, 0, 0, -1}); }

}  // namespace

TEST_CASE("rational arithmetic normalizes") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(1, -2) == Rat(-1, 2));
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(1, 2) * Rat(2, 3) == Rat(1, 3));
    CHECK_THROWS_AS(Rat(1, 0), Error);
}

TEST_CASE("symbolic bracket and residue pairing") {
    const SymLaurent ez = sym_monomial(sym_e(), 1);
    const SymLaurent fzinv = sym_monomial(sym_f(), -1);

    // [E z, F z^-1] = H
    const SymLaurent br = sym_lbracket(ez, fzinv);
    CHECK(sym_lequal(br, sym_monomial(sym_h(), 0)));

    // Res<E z, (F z^-1)'> = -tr(EF) = -1
    const RatC res = sym_res_pairing(ez, fzinv);
    CHECK(res == (RatC{Rat(-1), Rat(0)}));

    // antisymmetric ingredient: Res<f, f'> = 0
    CHECK(is_zero(sym_res_pairing(ez, ez)));
    const SymLaurent mixed = sym_ladd(ez, sym_monomial(sym_h(), -2));
    CHECK(is_zero(sym_res_pairing(mixed, mixed)));
}

TEST_CASE("pin_conventions fixes the sign package") {
    const PinnedSigns pinned = pin_conventions();
    // omega = -Res<f, g'>  (equivalently <z f', g>_0), Adjoint c-part
    // r_c + <A,B>_0 - r_d (1/2) <B,B>_0.
    CHECK(pinned.cocycle_sign == -1);
    CHECK(pinned.pair_sign == 1);
    CHECK(pinned.half_sign == -1);
}

TEST_CASE("oracle_abelian_monodromy closed forms") {
    // alpha = X z^-1 with X = diag(1,-1): exp(2 pi i X) = I.
    const LaurentMatrix alpha = LaurentMatrix::monomial(sl2_h(), -1);
    CHECK((oracle_abelian_monodromy(alpha) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK((oracle_abelian_monodromy(LaurentMatrix::zero(2)) - Matrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    const LaurentMatrix half = LaurentMatrix::monomial(0.5 * sl2_h(), -1);
    CHECK((oracle_abelian_monodromy(half) + Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

    // Non-commuting coefficients are rejected.
    const LaurentMatrix bad = LaurentMatrix::monomial(kmloop::testing::sl2_e(), -1) +
                              LaurentMatrix::monomial(kmloop::testing::sl2_f(), 0);
    CHECK_THROWS_AS(oracle_abelian_monodromy(bad), InputError);
}

TEST_CASE("oracle_alcove diagnostics") {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 0) = Complex(0.0, 5.3);
    x(1, 1) = Complex(0.0, -5.3);
    // Radius 11 comfortably contains the optimum shift (-5, +5).
    const SectionElement sec = oracle_alcove(x, 11);
    CHECK(sec.theta()[0] == doctest::Approx(0.3).epsilon(1e-12));
    // Radius 5 puts the optimum on the search boundary: diagnostic.
    CHECK_THROWS_AS(oracle_alcove(x, 5), DegeneracyError);
}

TEST_CASE("oracle_eval agrees with the fast evaluator") {
    FixtureRng rng(211);
    for (int trial = 0; trial < 25; ++trial) {
        const LaurentMatrix f = random_laurent(rng, 2, -3, 3, 1.0);
        const Complex z = std::polar(rng.uniform(0.4, 2.5), rng.uniform(0.0, 2.0 * M_PI));
        CHECK((oracle_eval(f, z) - evaluate(f, z)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

namespace {

LaurentMatrix to_float(const SymLaurent& f) {
    if (f.terms.empty()) return LaurentMatrix::zero(f.d);
    const int k_min = f.terms.begin()->first;
    const int k_max = f.terms.rbegin()->first;
    std::vector<Matrix> coeffs;
    for (int k = k_min; k <= k_max; ++k) {
        Matrix c = Matrix::Zero(f.d, f.d);
        auto it = f.terms.find(k);
        if (it != f.terms.end())
            for (int i = 0; i < f.d; ++i)
                for (int j = 0; j < f.d; ++j) {
                    const RatC& v = it->second.at(i, j);
                    c(i, j) = Complex(static_cast<double>(v.re.num) / static_cast<double>(v.re.den),
                                      static_cast<double>(v.im.num) / static_cast<double>(v.im.den));
                }
        coeffs.push_back(std::move(c));
    }
    return LaurentMatrix(f.d, k_min, std::move(coeffs));
}

}  // namespace

TEST_CASE("floating bracket matches the symbolic bracket on monomials") {
    const LieBackend su2 = make_backend('A', 2);
    for (int j = -2; j <= 2; ++j)
        for (int k = -2; k <= 2; ++k) {
            const SymLaurent sa = sym_monomial(sym_e(), j);
            const SymLaurent sb = sym_monomial(sym_f(), k);
            const LaurentMatrix expect = to_float(sym_lbracket(sa, sb));

            const LoopAlgebraElement fa =
                make_loop_element(LaurentMatrix::monomial(kmloop::testing::sl2_e(), j), su2);
            const LoopAlgebraElement fb =
                make_loop_element(LaurentMatrix::monomial(kmloop::testing::sl2_f(), k), su2);
            CHECK(kmloop::testing::coeff_distance(lbracket(fa, fb).value, expect) < 1e-12);
        }
}

TEST_SUITE_END();
