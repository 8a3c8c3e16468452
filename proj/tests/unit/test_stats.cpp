#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "econet/stats.hpp"

using namespace econet;

TEST_CASE("p-value distributions match external reference values") {
    // Frozen against scipy.stats (t.sf / f.sf), 1e-8 absolute.
    CHECK(student_t_pvalue(2.5, 6) == doctest::Approx(0.04652823228416728).epsilon(1e-8));
    CHECK(student_t_pvalue(1.0, 7) == doctest::Approx(0.3506166628202075).epsilon(1e-8));
    CHECK(student_t_pvalue(-4.3, 3) == doctest::Approx(0.023140264360234395).epsilon(1e-8));
    CHECK(student_t_pvalue(2.5, 6, /*two_sided=*/false) ==
          doctest::Approx(0.5 * 0.04652823228416728).epsilon(1e-8));
    CHECK(fisher_f_pvalue(10.0, 2, 6) == doctest::Approx(0.012289485662266729).epsilon(1e-8));
    CHECK(fisher_f_pvalue(3.5, 3, 5) == doctest::Approx(0.10551954136468487).epsilon(1e-8));
    CHECK(fisher_f_pvalue(1.0, 4, 4) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("ols_fit recovers an exact linear relation") {
    const int n = 9;
    Eigen::MatrixXd x(n, 1);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        x(i, 0) = i + 1.0;
        y[i] = 2.0 * x(i, 0) + 1.0;
    }
    const OlsResult fit = ols_fit(x, y);
    CHECK(fit.coefficients[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.mean_relative_error == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.f_pvalue == 0.0);
}

TEST_CASE("uncorrelated noise is rejected at close to the nominal rate") {
    // Under the null the t p-value is uniform, so p > 0.025 should happen
    // for about 97.5% of seeded draws.
    std::mt19937_64 rng(123);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int trials = 1000;
    int retained = 0;
    for (int s = 0; s < trials; ++s) {
        const int n = 12;
        Eigen::MatrixXd x(n, 1);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            x(i, 0) = gauss(rng);
            y[i] = gauss(rng) + 5.0;
        }
        if (ols_fit(x, y).t_pvalues[0] > 0.025) ++retained;
    }
    const double rate = static_cast<double>(retained) / trials;
    CHECK(rate > 0.955);
    CHECK(rate < 0.995);
}

TEST_CASE("a duplicated column is a singular design") {
    Eigen::MatrixXd x(8, 2);
    Eigen::VectorXd y(8);
    for (int i = 0; i < 8; ++i) {
        x(i, 0) = i;
        x(i, 1) = i;
        y[i] = 2.0 * i + 1.0;
    }
    CHECK_THROWS_AS(ols_fit(x, y), computation_error);
}

TEST_CASE("insufficient data and zero targets") {
    Eigen::MatrixXd x(3, 2);
    Eigen::VectorXd y(3);
    CHECK_THROWS_AS(ols_fit(x, y), std::invalid_argument);

    Eigen::MatrixXd x2(8, 1);
    Eigen::VectorXd y2(8);
    for (int i = 0; i < 8; ++i) {
        x2(i, 0) = i + 0.5 * ((i * 7) % 3);
        y2[i] = i == 3 ? 0.0 : 1.0 + i;
    }
    const OlsResult fit = ols_fit(x2, y2);
    CHECK(fit.zero_targets == 1);
    CHECK(std::isfinite(fit.mean_relative_error));
}

TEST_CASE("OLS residuals are orthogonal to the regressors and the constant") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 12, k = 3;
        Eigen::MatrixXd x(n, k);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j) x(i, j) = gauss(rng);
            y[i] = gauss(rng) * 3.0 + 1.0;
        }
        const OlsResult fit = ols_fit(x, y);
        const double scale = fit.residuals.norm() * y.norm() + 1e-30;
        for (int j = 0; j < k; ++j) {
            CHECK(std::fabs(fit.residuals.dot(x.col(j))) / scale < 1e-8);
        }
        CHECK(std::fabs(fit.residuals.sum()) / scale < 1e-8);
    }
}

TEST_CASE("r_squared equals squared Pearson of fit vs data for one regressor") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 10;
        Eigen::MatrixXd x(n, 1);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            x(i, 0) = gauss(rng);
            y[i] = 0.8 * x(i, 0) + 0.5 * gauss(rng);
        }
        const OlsResult fit = ols_fit(x, y);
        const std::vector<double> yhat(fit.fitted.data(), fit.fitted.data() + n);
        const std::vector<double> yv(y.data(), y.data() + n);
        const double r = pearson(yhat, yv);
        CHECK(fit.r_squared == doctest::Approx(r * r).epsilon(1e-10));
    }
}

TEST_CASE("vif") {
    SUBCASE("orthogonal centered columns score 1") {
        Eigen::MatrixXd x(4, 2);
        x << 1, 1, 1, -1, -1, 1, -1, -1;
        const Eigen::VectorXd v = vif(x);
        CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("an exactly collinear column is an infinity sentinel, not an error") {
        Eigen::MatrixXd x(6, 3);
        for (int i = 0; i < 6; ++i) {
            x(i, 0) = i + 1;
            x(i, 1) = (i * 3) % 5;
            x(i, 2) = x(i, 0) + x(i, 1);
        }
        const Eigen::VectorXd v = vif(x);
        CHECK(std::isinf(v[0]));
        CHECK(std::isinf(v[1]));
        CHECK(std::isinf(v[2]));
    }
    SUBCASE("a correlated pair matches 1/(1-r^2) from the OLS oracle") {
        std::mt19937_64 rng(8);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int n = 30;
        Eigen::MatrixXd x(n, 2);
        for (int i = 0; i < n; ++i) {
            x(i, 0) = gauss(rng);
            x(i, 1) = 0.7 * x(i, 0) + 0.5 * gauss(rng);
        }
        // oracle: regress one column on the other
        const OlsResult slr = ols_fit(x.col(1), x.col(0));
        const double expect = 1.0 / (1.0 - slr.r_squared);
        const Eigen::VectorXd v = vif(x);
        CHECK(v[0] == doctest::Approx(expect).epsilon(1e-8));
        CHECK(v[1] == doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("condition_number") {
    SUBCASE("orthonormal columns give exactly 1") {
        Eigen::MatrixXd x = Eigen::MatrixXd::Identity(5, 3);
        CHECK(condition_number(x) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("nearly duplicate columns blow past the acceptance bound of 10") {
        Eigen::MatrixXd x(6, 2);
        for (int i = 0; i < 6; ++i) {
            x(i, 0) = i + 1;
            x(i, 1) = i + 1 + 1e-6 * ((i % 2) ? 1 : -1);
        }
        CHECK(condition_number(x) > 10.0);
    }
    SUBCASE("matches the normalized-Gram eigenvalue oracle on random designs") {
        std::mt19937_64 rng(9);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            Eigen::MatrixXd x(9, 3);
            for (int i = 0; i < 9; ++i) {
                for (int j = 0; j < 3; ++j) x(i, j) = gauss(rng);
            }
            Eigen::MatrixXd normalized = x;
            for (int j = 0; j < 3; ++j) normalized.col(j) /= normalized.col(j).norm();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(normalized.transpose() *
                                                               normalized);
            const double oracle =
                std::sqrt(eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff());
            CHECK(condition_number(x) == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
    SUBCASE("zero columns cannot be normalized") {
        Eigen::MatrixXd x = Eigen::MatrixXd::Zero(4, 2);
        x.col(0).setOnes();
        CHECK_THROWS_AS(condition_number(x), validation_error);
    }
}

TEST_CASE("vif and condition number are invariant under positive column rescaling") {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> scale(0.1, 50.0);
    for (int trial = 0; trial < 15; ++trial) {
        Eigen::MatrixXd x(12, 3);
        for (int i = 0; i < 12; ++i) {
            for (int j = 0; j < 3; ++j) x(i, j) = gauss(rng) + (j == 2 ? 0.4 * x(i, 0) : 0.0);
        }
        Eigen::MatrixXd scaled = x;
        for (int j = 0; j < 3; ++j) scaled.col(j) *= scale(rng);
        CHECK(condition_number(scaled) == doctest::Approx(condition_number(x)).epsilon(1e-9));
        const Eigen::VectorXd v0 = vif(x);
        const Eigen::VectorXd v1 = vif(scaled);
        for (int j = 0; j < 3; ++j) CHECK(v1[j] == doctest::Approx(v0[j]).epsilon(1e-8));
    }
}

TEST_CASE("pearson") {
    SUBCASE("affine relations are exactly +/-1") {
        std::vector<double> x = {1, 2, 3, 4, 5};
        std::vector<double> y;
        for (double v : x) y.push_back(3.0 * v - 7.0);
        std::vector<double> neg;
        for (double v : x) neg.push_back(-v);
        CHECK(pearson(x, y) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("hand-computed sample value") {
        const std::vector<double> x = {1, 2, 3, 4};
        const std::vector<double> y = {2, 1, 4, 3};
        CHECK(pearson(x, y) == doctest::Approx(0.6).epsilon(1e-12));
    }
    SUBCASE("constant input throws; the _or_nan variant yields NaN") {
        const std::vector<double> c = {2, 2, 2};
        const std::vector<double> y = {1, 2, 3};
        CHECK_THROWS_AS(pearson(c, y), computation_error);
        CHECK(std::isnan(pearson_or_nan(c, y)));
    }
    SUBCASE("symmetry and positive-affine invariance") {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> x(8), y(8), xt(8);
        for (int i = 0; i < 8; ++i) {
            x[i] = gauss(rng);
            y[i] = gauss(rng);
            xt[i] = 2.5 * x[i] + 13.0;
        }
        CHECK(pearson(x, y) == doctest::Approx(pearson(y, x)).epsilon(1e-12));
        CHECK(pearson(xt, y) == doctest::Approx(pearson(x, y)).epsilon(1e-10));
    }
}
