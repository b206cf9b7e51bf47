#include <doctest.h>

#include <cmath>

#include "kmloop/oracles.hpp"
#include "test_helpers.hpp"

using namespace kmloop;
using namespace kmloop::testing;

TEST_SUITE_BEGIN("laurent");

TEST_CASE("lmul basic identities") {
    const LaurentMatrix id = LaurentMatrix::identity(2);
    const LaurentMatrix z_id = LaurentMatrix::monomial(Matrix::Identity(2, 2), 1);
    const LaurentMatrix zinv_id = LaurentMatrix::monomial(Matrix::Identity(2, 2), -1);

    CHECK(coeff_distance(lmul(z_id, zinv_id), id) == 0.0);
    CHECK(lmul(z_id, LaurentMatrix::zero(2)).is_zero());

    // (I + Ez)(I - Ez) = I for nilpotent E.
    const LaurentMatrix plus = id + LaurentMatrix::monomial(sl2_e(), 1);
    const LaurentMatrix minus = id - LaurentMatrix::monomial(sl2_e(), 1);
    const LaurentMatrix prod = lmul(plus, minus);
    CHECK(coeff_distance(prod, id) == 0.0);
    CHECK(prod.k_min() == 0);
    CHECK(prod.k_max() == 0);  // canonical form trims the exact zero at z^2

    CHECK_THROWS_AS(lmul(id, LaurentMatrix::identity(3)), DimensionMismatch);
}

TEST_CASE("window bookkeeping is exact") {
    const LaurentMatrix a = scalar_laurent({{-2, 1.0}, {3, 2.0}});
    const LaurentMatrix b = scalar_laurent({{-1, 4.0}, {2, 1.0}});
    const LaurentMatrix p = lmul(a, b);
    CHECK(p.k_min() == -3);
    CHECK(p.k_max() == 5);
}

TEST_CASE("lderiv") {
    const LaurentMatrix z_id = LaurentMatrix::monomial(Matrix::Identity(2, 2), 1);
    CHECK(coeff_distance(lderiv(z_id), LaurentMatrix::identity(2)) == 0.0);
    CHECK(lderiv(LaurentMatrix::monomial(sl2_h(), 0)).is_zero());
    const LaurentMatrix zinv = scalar_laurent({{-1, 1.0}});
    CHECK(coeff_distance(lderiv(zinv), scalar_laurent({{-2, -1.0}})) == 0.0);
}

TEST_CASE("d_action conventions") {
    const LaurentMatrix z_id = LaurentMatrix::monomial(Matrix::Identity(2, 2), 1);
    CHECK(coeff_distance(d_action(z_id, Convention::standard), z_id) == 0.0);
    CHECK(d_action(LaurentMatrix::monomial(sl2_h(), 0), Convention::standard).is_zero());
    CHECK(d_action(LaurentMatrix::monomial(sl2_h(), 0), Convention::paper_literal).is_zero());

    const LaurentMatrix f = LaurentMatrix::monomial(sl2_e(), -2);
    const LaurentMatrix want = LaurentMatrix::monomial(Complex(0.0, -2.0) * sl2_e(), -2);
    CHECK(coeff_distance(d_action(f, Convention::paper_literal), want) == 0.0);
}

TEST_CASE("residue") {
    CHECK(max_abs_diff(residue(LaurentMatrix::monomial(sl2_e(), -1)), sl2_e()) == 0.0);
    CHECK(residue(LaurentMatrix::monomial(Matrix::Identity(2, 2), 1)).isZero(0.0));
    // (z+1)^2 / z = z + 2 + 1/z
    const LaurentMatrix f = scalar_laurent({{-1, 1.0}, {0, 2.0}, {1, 1.0}});
    CHECK(residue(f)(0, 0) == Complex(1.0, 0.0));
}

TEST_CASE("evaluate") {
    const LaurentMatrix z_id = LaurentMatrix::monomial(Matrix::Identity(2, 2), 1);
    CHECK(max_abs_diff(evaluate(z_id, 2.0), 2.0 * Matrix::Identity(2, 2)) == 0.0);

    const LaurentMatrix sym = scalar_laurent({{-1, 1.0}, {1, 1.0}});
    CHECK(std::abs(evaluate(sym, 1.0)(0, 0) - Complex(2.0, 0.0)) < 1e-15);
    const double e = std::exp(1.0);
    CHECK(std::abs(evaluate(sym, e)(0, 0) - Complex(e + 1.0 / e, 0.0)) < 1e-14);
    CHECK(std::abs(e + 1.0 / e - 3.08616) < 1e-5);

    CHECK_THROWS_AS(evaluate(sym, Complex(0.0, 0.0)), InputError);

    // One-sided windows evaluate correctly too.
    const LaurentMatrix high = scalar_laurent({{3, 2.0}});
    CHECK(std::abs(evaluate(high, 2.0)(0, 0) - Complex(16.0, 0.0)) < 1e-13);
    const LaurentMatrix low = scalar_laurent({{-3, 2.0}});
    CHECK(std::abs(evaluate(low, 2.0)(0, 0) - Complex(0.25, 0.0)) < 1e-15);
}

TEST_CASE("shift_arg") {
    const LaurentMatrix z_id = LaurentMatrix::monomial(Matrix::Identity(2, 2), 1);
    CHECK(coeff_distance(shift_arg(z_id, 2.0), Complex(2.0, 0.0) * z_id) == 0.0);

    FixtureRng rng(7);
    const LaurentMatrix f = random_laurent(rng, 2, -3, 3, 1.0);
    CHECK(coeff_distance(shift_arg(f, 1.0), f) == 0.0);

    const LaurentMatrix zinv_id = LaurentMatrix::monomial(Matrix::Identity(2, 2), -1);
    const LaurentMatrix shifted = shift_arg(zinv_id, Complex(0.0, 1.0));
    CHECK(coeff_distance(shifted, Complex(0.0, -1.0) * zinv_id) < 1e-15);
}

TEST_CASE("norm_sup closed forms") {
    const LaurentMatrix z_id = LaurentMatrix::monomial(Matrix::Identity(2, 2), 1);
    const double e = std::exp(1.0);
    CHECK(norm_sup(z_id, 1) == doctest::Approx(e).epsilon(1e-12));
    CHECK(norm_sup(LaurentMatrix::zero(2), 3) == 0.0);

    const LaurentMatrix sym = scalar_laurent({{-1, 1.0}, {1, 1.0}});
    // Dense boundary sampling oracle agrees with the closed form e + 1/e.
    CHECK(norm_sup(sym, 1) == doctest::Approx(e + 1.0 / e).epsilon(1e-6));
    CHECK(oracle::oracle_norm_sup(sym, 1) == doctest::Approx(e + 1.0 / e).epsilon(1e-7));

    CHECK_THROWS_AS(norm_sup(sym, GradingConfig(0, 8)), InputError);
}

TEST_CASE("norm_sup interval encloses the dense estimate") {
    FixtureRng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const LaurentMatrix f = random_laurent(rng, 2, -3, 3, 1.0);
        for (int n = 0; n <= 3; ++n) {
            const SupEstimate est = norm_sup_interval(f, GradingConfig(n, 256));
            const double dense = oracle::oracle_norm_sup(f, n, 1 << 12);
            CHECK(est.lower <= dense + 1e-12);
            CHECK(dense <= est.upper + 1e-12);
        }
    }
}

TEST_CASE("norm_coeff") {
    const LaurentMatrix z_id = LaurentMatrix::monomial(Matrix::Identity(2, 2), 1);
    const double e = std::exp(1.0);
    CHECK(norm_coeff(z_id, 1, CoeffNormFlavor::linf) == doctest::Approx(e).epsilon(1e-14));
    CHECK(norm_coeff(LaurentMatrix::zero(2), 2, CoeffNormFlavor::l1) == 0.0);

    // b_k = max(|a_k|, |a_-k|) pairs the two degrees, so z + 1/z carries a
    // single weight e^{2} at k = 1.
    const LaurentMatrix sym = scalar_laurent({{-1, 1.0}, {1, 1.0}});
    CHECK(norm_coeff(sym, 2, CoeffNormFlavor::l1) == doctest::Approx(e * e).epsilon(1e-14));
    CHECK(norm_coeff(sym, 2, CoeffNormFlavor::linf) == doctest::Approx(e * e).epsilon(1e-14));
}

TEST_CASE("grading monotonicity and sandwich") {
    FixtureRng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const LaurentMatrix f = random_laurent(rng, 2, -4, 4, 1.0);
        double prev_sup = -1.0, prev_l1 = -1.0, prev_linf = -1.0;
        for (int n = 0; n <= 4; ++n) {
            const double sup = norm_sup(f, GradingConfig(n, 256));
            const double c1 = norm_coeff(f, n, CoeffNormFlavor::l1);
            const double ci = norm_coeff(f, n, CoeffNormFlavor::linf);
            CHECK(sup >= prev_sup - 1e-12);
            CHECK(c1 >= prev_l1 - 1e-12);
            CHECK(ci >= prev_linf - 1e-12);
            prev_sup = sup;
            prev_l1 = c1;
            prev_linf = ci;

            // Cauchy-side sandwich: coefficients are dominated by the sup.
            CHECK(ci <= sup * (1.0 + 1e-9) + 1e-9);
            // Triangle-side: the sup is dominated by twice the paired l1 sum.
            CHECK(sup <= 2.0 * c1 + 1e-9);
            // Boundary L1 mean never beats the sup.
            CHECK(norm_l1_boundary(f, GradingConfig(n, 256)) <= sup + 1e-9);
        }
    }
}

TEST_CASE("derivative tame bound holds on random loops") {
    FixtureRng rng(29);
    const double e = std::exp(1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const LaurentMatrix f = random_laurent(rng, 2, -4, 4, 1.0);
        const LaurentMatrix df = lderiv(f);
        for (int n = 0; n <= 3; ++n) {
            const double lhs = norm_sup(df, GradingConfig(n, 256));
            const double rhs = std::exp(n + 1.0) / (e - 1.0) * norm_sup(f, GradingConfig(n + 1, 256));
            CHECK(lhs <= rhs * (1.0 + 1e-9) + 1e-9);
        }
    }
}

TEST_CASE("rotation invariance of the sup norm") {
    FixtureRng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const LaurentMatrix f = random_laurent(rng, 2, -3, 3, 1.0);
        const Complex w = rng.unit_complex();
        const double a = norm_sup(f, GradingConfig(1, 2048));
        const double b = norm_sup(shift_arg(f, w), GradingConfig(1, 2048));
        CHECK(a == doctest::Approx(b).epsilon(1e-4));
    }
}

TEST_CASE("ring axiom at sampled points") {
    FixtureRng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const LaurentMatrix a = random_laurent(rng, 2, -2, 2, 1.0);
        const LaurentMatrix b = random_laurent(rng, 2, -2, 2, 1.0);
        const Complex z = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * M_PI));
        const Matrix lhs = evaluate(lmul(a, b), z);
        const Matrix rhs = evaluate(a, z) * evaluate(b, z);
        const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
        CHECK(max_abs_diff(lhs, rhs) / scale < 1e-12);
    }
}

TEST_CASE("Leibniz rule exactly on coefficients") {
    FixtureRng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const LaurentMatrix a = random_laurent(rng, 2, -3, 2, 1.0);
        const LaurentMatrix b = random_laurent(rng, 2, -1, 3, 1.0);
        const LaurentMatrix lhs = lderiv(lmul(a, b));
        const LaurentMatrix rhs = lmul(lderiv(a), b) + lmul(a, lderiv(b));
        CHECK(coeff_distance(lhs, rhs) < 1e-13);
    }
}

TEST_CASE("frechet metric") {
    const LaurentMatrix z_id = LaurentMatrix::monomial(Matrix::Identity(2, 2), 1);
    const LaurentMatrix zero = LaurentMatrix::zero(2);

    const Interval self = frechet_metric(z_id, z_id, 6);
    CHECK(self.lower == 0.0);
    CHECK(self.upper == doctest::Approx(std::pow(0.5, 5)).epsilon(1e-12));

    const Interval d = frechet_metric(z_id, zero, 8, 256);
    CHECK(d.upper <= 2.0);
    // Independent summation from the closed-form norms ||z||_n = e^n.
    double expect = 0.0;
    for (int n = 0; n < 8; ++n) {
        const double nn = std::exp(static_cast<double>(n));
        expect += std::pow(0.5, n) * nn / (1.0 + nn);
    }
    CHECK(d.lower == doctest::Approx(expect).epsilon(1e-9));
    CHECK(expect == doctest::Approx(1.32061).epsilon(1e-4));
}

TEST_CASE("fit_from_samples") {
    const Eigen::Index dim = 2;
    const LaurentMatrix z_id = LaurentMatrix::monomial(Matrix::Identity(dim, dim), 1);

    auto sample = [&](const LaurentMatrix& f, double radius, int count) {
        CircleSamples s{radius, {}};
        for (int i = 0; i < count; ++i)
            s.values.push_back(evaluate(f, std::polar(radius, 2.0 * M_PI * i / static_cast<double>(count))));
        return s;
    };

    SUBCASE("in-window round trip") {
        const FitResult fit =
            fit_from_samples(sample(z_id, std::exp(-1.0), 16), sample(z_id, std::exp(1.0), 16), -2, 2);
        CHECK(fit.residual < 1e-12);
        CHECK(coeff_distance(fit.value, z_id) < 1e-12);
    }

    SUBCASE("zero") {
        const LaurentMatrix zero = LaurentMatrix::zero(dim);
        const FitResult fit =
            fit_from_samples(sample(zero, std::exp(-1.0), 8), sample(zero, std::exp(1.0), 8), -1, 1);
        CHECK(fit.residual < 1e-14);
        CHECK(fit.value.is_zero());
    }

    SUBCASE("terminating exponential series") {
        // exp(Ez) = I + Ez for nilpotent E; sample the exponential directly.
        auto sample_exp = [&](double radius, int count) {
            CircleSamples s{radius, {}};
            for (int i = 0; i < count; ++i) {
                const Complex z = std::polar(radius, 2.0 * M_PI * i / static_cast<double>(count));
                Matrix m = Matrix::Identity(dim, dim) + z * sl2_e();
                s.values.push_back(m);
            }
            return s;
        };
        const FitResult fit = fit_from_samples(sample_exp(std::exp(-1.0), 8), sample_exp(std::exp(1.0), 8), 0, 1);
        CHECK(fit.residual < 1e-13);
        CHECK(coeff_distance(fit.value, LaurentMatrix::identity(dim) + LaurentMatrix::monomial(sl2_e(), 1)) < 1e-13);
    }

    SUBCASE("underdetermined window rejected") {
        CHECK_THROWS_AS(
            fit_from_samples(sample(z_id, std::exp(-1.0), 4), sample(z_id, std::exp(1.0), 4), -2, 2),
            InputError);
    }

    SUBCASE("round trip on random windows") {
        FixtureRng rng(43);
        for (int trial = 0; trial < 20; ++trial) {
            const LaurentMatrix f = random_laurent(rng, 2, -3, 3, 1.0);
            const FitResult fit =
                fit_from_samples(sample(f, std::exp(-1.0), 32), sample(f, std::exp(1.0), 32), -3, 3);
            CHECK(fit.residual < 1e-10);
            CHECK(coeff_distance(fit.value, f) < 1e-10);
        }
    }
}

TEST_CASE("determinant and adjugate") {
    const Matrix id2 = Matrix::Identity(2, 2);
    LaurentMatrix diag(2, -1, {Matrix::Zero(2, 2), Matrix::Zero(2, 2), Matrix::Zero(2, 2)});
    {
        std::vector<Matrix> cs(3, Matrix::Zero(2, 2));
        cs[2](0, 0) = 1.0;  // z
        cs[0](1, 1) = 1.0;  // 1/z
        diag = LaurentMatrix(2, -1, cs);
    }
    const LaurentMatrix det = laurent_det(diag);
    CHECK(det.k_min() == 0);
    CHECK(det.k_max() == 0);
    CHECK(std::abs(det.coeff(0)(0, 0) - Complex(1.0, 0.0)) == 0.0);

    FixtureRng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index d = trial % 2 == 0 ? 2 : 3;
        const LaurentMatrix f = random_laurent(rng, d, -2, 2, 1.0);
        const LaurentMatrix lhs = lmul(f, laurent_adjugate(f));
        LaurentMatrix want = laurent_det(f);
        // det * I as a d x d Laurent matrix
        std::vector<Matrix> cs;
        for (int k = want.k_min(); k <= want.k_max(); ++k)
            cs.push_back(want.coeff(k)(0, 0) * Matrix::Identity(d, d));
        const LaurentMatrix rhs(d, want.k_min(), std::move(cs));
        CHECK(coeff_distance(lhs, rhs) < 1e-12);
    }
    (void)id2;
}

TEST_SUITE_END();
