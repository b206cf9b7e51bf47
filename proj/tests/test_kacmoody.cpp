#include <doctest.h>

#include <cmath>

#include "kmloop/oracles.hpp"
#include "test_helpers.hpp"

using namespace kmloop;
using namespace kmloop::testing;

TEST_SUITE_BEGIN("kacmoody");

namespace {

const LieBackend kSu2 = make_backend('A', 2);

KacMoodyVector loop_vec(const Matrix& m, int k) {
    return km_vector(make_loop_element(LaurentMatrix::monomial(m, k), kSu2));
}

KacMoodyVector c_vec() {
    return km_vector(make_loop_element(LaurentMatrix::zero(2), kSu2), {1.0, 0.0});
}

KacMoodyVector d_vec() {
    return km_vector(make_loop_element(LaurentMatrix::zero(2), kSu2), {0.0, 0.0}, {1.0, 0.0});
}

double km_distance(const KacMoodyVector& a, const KacMoodyVector& b) {
    return std::max({coeff_distance(a.loop.value, b.loop.value), std::abs(a.r_c - b.r_c),
                     std::abs(a.r_d - b.r_d)});
}

KacMoodyVector km_add(const KacMoodyVector& a, const KacMoodyVector& b) {
    LoopAlgebraElement loop = a.loop;
    loop.value += b.loop.value;
    loop.twist = std::nullopt;
    loop.real_form = false;
    return KacMoodyVector{std::move(loop), a.r_c + b.r_c, a.r_d + b.r_d, a.convention};
}

}  // namespace

TEST_CASE("cocycle values against the pinned sign") {
    // omega = s Res<f, g'> with s = -1 pinned by the oracle: omega(Ez, Fz^-1)
    // = -s = +1 under the run default.
    const KmConventions conv{};  // cocycle_sign = -1
    const LoopAlgebraElement ez = make_loop_element(LaurentMatrix::monomial(sl2_e(), 1), kSu2);
    const LoopAlgebraElement fzinv = make_loop_element(LaurentMatrix::monomial(sl2_f(), -1), kSu2);
    CHECK(cocycle(ez, fzinv, conv) == Complex(1.0, 0.0));

    // The raw residue ingredient itself is -1, matching the symbolic oracle.
    KmConventions raw = conv;
    raw.cocycle_sign = 1.0;
    CHECK(cocycle(ez, fzinv, raw) == Complex(-1.0, 0.0));

    const LoopAlgebraElement h0 = make_loop_element(LaurentMatrix::monomial(sl2_h(), 0), kSu2);
    CHECK(cocycle(h0, h0, conv) == Complex(0.0, 0.0));

    FixtureRng rng(401);
    FixtureSpec spec;
    for (int trial = 0; trial < 20; ++trial) {
        const LoopAlgebraElement f = random_loop_element(rng, spec);
        CHECK(std::abs(cocycle(f, f, conv)) < 1e-12);
        const LoopAlgebraElement g = random_loop_element(rng, spec);
        CHECK(std::abs(cocycle(f, g, conv) + cocycle(g, f, conv)) < 1e-12);
    }
}

TEST_CASE("cocycle matches the symbolic oracle on sl(2) monomials") {
    const KmConventions conv{};
    for (int j = -3; j <= 3; ++j)
        for (int k = -3; k <= 3; ++k) {
            const LoopAlgebraElement a =
                make_loop_element(LaurentMatrix::monomial(sl2_e(), j), kSu2);
            const LoopAlgebraElement b =
                make_loop_element(LaurentMatrix::monomial(sl2_f(), k), kSu2);

            oracle::SymMatrix se(2), sf(2);
            se.at(0, 1) = oracle::RatC{oracle::Rat(1), oracle::Rat(0)};
            sf.at(1, 0) = oracle::RatC{oracle::Rat(1), oracle::Rat(0)};
            const oracle::RatC res =
                oracle::sym_res_pairing(oracle::sym_monomial(se, j), oracle::sym_monomial(sf, k));
            const double expect =
                -static_cast<double>(res.re.num) / static_cast<double>(res.re.den);
            CHECK(std::abs(cocycle(a, b, conv) - Complex(expect, 0.0)) < 1e-12);
        }
}

TEST_CASE("km_bracket definition cases") {
    // [d, E z^k] = k E z^k under the standard convention, no central term.
    for (int k = -2; k <= 2; ++k) {
        const KacMoodyVector br = km_bracket(d_vec(), loop_vec(sl2_e(), k));
        CHECK(km_distance(br, loop_vec(static_cast<double>(k) * sl2_e(), k)) < 1e-14);
    }

    // c is central.
    FixtureRng rng(403);
    FixtureSpec spec;
    const KacMoodyVector x = random_km_vector(rng, spec, 1.0);
    const KacMoodyVector cc = c_vec();
    CHECK(km_distance(km_bracket(cc, x), km_vector(make_loop_element(LaurentMatrix::zero(2), kSu2))) == 0.0);

    // [E z, F z^-1] = H + c under the pinned sign.
    const KacMoodyVector br = km_bracket(loop_vec(sl2_e(), 1), loop_vec(sl2_f(), -1));
    CHECK(coeff_distance(br.loop.value, LaurentMatrix::monomial(sl2_h(), 0)) == 0.0);
    CHECK(br.r_c == Complex(1.0, 0.0));
    CHECK(br.r_d == Complex(0.0, 0.0));

    // Mixed conventions are rejected.
    KacMoodyVector literal = loop_vec(sl2_e(), 1);
    literal.convention = Convention::paper_literal;
    CHECK_THROWS_AS(km_bracket(literal, d_vec()), InputError);
}

TEST_CASE("km_form values") {
    CHECK(km_form(c_vec(), d_vec()) == Complex(1.0, 0.0));
    CHECK(km_form(c_vec(), c_vec()) == Complex(0.0, 0.0));
    CHECK(km_form(loop_vec(sl2_e(), 1), loop_vec(sl2_f(), -1)) == Complex(1.0, 0.0));
}

TEST_CASE("antisymmetry, Jacobi, cocycle identity, invariance") {
    const KmConventions conv{};
    for (int backend_n : {2, 3}) {
        const LieBackend backend = make_backend('A', backend_n);
        FixtureRng rng(405 + backend_n);
        FixtureSpec spec;
        spec.backend = backend;
        spec.window_min = -4;
        spec.window_max = 4;

        for (int trial = 0; trial < 25; ++trial) {
            const bool twisted = backend_n == 2 && trial % 2 == 1;
            FixtureSpec used = spec;
            if (twisted) used.twist_order = 2;
            const KacMoodyVector x = random_km_vector(rng, used, 1.0);
            const KacMoodyVector y = random_km_vector(rng, used, 1.0);
            const KacMoodyVector z = random_km_vector(rng, used, 1.0);

            const KacMoodyVector xy = km_bracket(x, y, conv);
            CHECK(km_distance(km_add(xy, km_bracket(y, x, conv)),
                              km_vector(make_loop_element(LaurentMatrix::zero(backend.dim()),
                                                          backend))) < 1e-12);

            const KacMoodyVector jac = km_add(
                km_add(km_bracket(xy, z, conv), km_bracket(km_bracket(y, z, conv), x, conv)),
                km_bracket(km_bracket(z, x, conv), y, conv));
            CHECK(km_distance(jac, km_vector(make_loop_element(
                                       LaurentMatrix::zero(backend.dim()), backend))) < 1e-10);

            // Chevalley-Eilenberg 2-cocycle identity on the loop parts.
            const Complex cc = cocycle(lbracket(x.loop, y.loop), z.loop, conv) +
                               cocycle(lbracket(y.loop, z.loop), x.loop, conv) +
                               cocycle(lbracket(z.loop, x.loop), y.loop, conv);
            CHECK(std::abs(cc) < 1e-11);

            // Invariance of the form under ad.
            const Complex inv = km_form(km_bracket(x, y, conv), z, conv) +
                                km_form(y, km_bracket(x, z, conv), conv);
            CHECK(std::abs(inv) < 1e-10);

            if (twisted) {
                const KacMoodyVector txy = km_bracket(x, y, conv);
                LoopAlgebraElement check = txy.loop;
                check.twist = make_automorphism(backend, 2);
                CHECK(flag_violation(check) < 1e-11);
            }
        }
    }
}

TEST_CASE("km_norm combines sup and Euclidean parts") {
    const GradingConfig cfg(1, 256);
    KacMoodyVector v = loop_vec(sl2_e(), 1);
    v.r_c = Complex(3.0, 0.0);
    v.r_d = Complex(0.0, 4.0);
    CHECK(km_norm(v, cfg) == doctest::Approx(std::exp(1.0) + 5.0).epsilon(1e-9));
}

TEST_CASE("ad tame report") {
    const KmConventions conv{Convention::paper_literal, 1.0, -1.0};

    KacMoodyVector cc = c_vec();
    cc.convention = Convention::paper_literal;
    KacMoodyVector y = loop_vec(sl2_f(), -1);
    y.convention = Convention::paper_literal;
    for (const TameRow& row : ad_tame_report(cc, y, 0, 2, 256, 1.0, conv)) {
        CHECK(row.lhs == 0.0);
        CHECK(row.ratio == 0.0);
    }

    KacMoodyVector ez = loop_vec(sl2_e(), 1);
    ez.convention = Convention::paper_literal;
    CHECK(ad_tame_report(ez, ez, 0, 0, 256, 1.0, conv)[0].lhs == 0.0);

    KacMoodyVector x = loop_vec(sl2_e(), 1);
    x.convention = Convention::paper_literal;
    x.r_d = Complex(1.0, 0.0);
    const std::vector<TameRow> rows = ad_tame_report(x, y, 1, 1, 256, 1.0, conv);
    CHECK(rows[0].ratio > 0.0);
    CHECK(rows[0].ratio < 1.0);

    SUBCASE("no violations on random pairs") {
        FixtureRng rng(409);
        FixtureSpec spec;
        for (int trial = 0; trial < 20; ++trial) {
            const KacMoodyVector a = random_km_vector(rng, spec, 1.0, Convention::paper_literal);
            const KacMoodyVector b = random_km_vector(rng, spec, 1.0, Convention::paper_literal);
            for (const TameRow& row : ad_tame_report(a, b, 0, 3, 192, 1.0, conv))
                CHECK(row.ratio <= 1.0 + 1e-9);
        }
    }
}

TEST_SUITE_END();
