#pragma once

#include <Eigen/Dense>
#include <span>

#include "econet/common.hpp"

namespace econet {

struct OlsOptions {
    bool with_intercept = true;
    /// Two-sided t/F significance by default; one-sided tests halve the
    /// t p-values.
    bool two_sided = true;
};

/// Least-squares fit of y on the columns of X (plus an optional intercept).
struct OlsResult {
    Eigen::VectorXd coefficients;   // one per regressor column
    double intercept = 0.0;         // 0 when fitted without intercept
    Eigen::VectorXd fitted;
    Eigen::VectorXd residuals;
    double ssr = 0.0;               // sum of squared residuals
    double r_squared = 0.0;
    Eigen::VectorXd t_pvalues;      // per regressor coefficient
    double intercept_pvalue = 0.0;  // NaN without intercept
    double f_pvalue = 0.0;
    /// Mean over samples of |fitted - y| / |y|, taken over samples with
    /// y != 0; NaN when every target is zero.
    double mean_relative_error = 0.0;
    int zero_targets = 0;  // samples excluded from the relative-error metric
};

/// Plain OLS with the diagnostics the fit-acceptance rules need.
/// Requires n >= k + 2 so the F-test keeps at least one residual degree of
/// freedom; throws computation_error on a rank-deficient design.
OlsResult ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const OlsOptions& opts = {});

/// Variance inflation factors: VIF_j = 1 / (1 - R2_j) from regressing column
/// j on the remaining columns (with intercept). Perfect collinearity yields
/// +infinity rather than an error. Requires k >= 2, non-constant columns.
Eigen::VectorXd vif(const Eigen::MatrixXd& X);

/// Ratio of the largest to smallest singular value of X after scaling each
/// column to unit Euclidean norm. Zero columns are a validation error.
double condition_number(const Eigen::MatrixXd& X);

/// Sample Pearson correlation. Requires equal lengths >= 3 and non-constant
/// inputs (computation_error otherwise).
double pearson(std::span<const double> x, std::span<const double> y);

/// As pearson(), but yields NaN instead of throwing on constant input.
double pearson_or_nan(std::span<const double> x, std::span<const double> y);

/// P(|T| >= |t|) for Student-t with `dof` degrees of freedom (halved for
/// one-sided tests). Backed by the regularized incomplete beta function.
double student_t_pvalue(double t, int dof, bool two_sided = true);

/// Upper-tail p-value of the F distribution with (dof1, dof2).
double fisher_f_pvalue(double f, int dof1, int dof2);

}  // namespace econet
