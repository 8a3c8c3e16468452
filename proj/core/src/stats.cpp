#include "econet/stats.hpp"

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <limits>

namespace econet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_constant(const Eigen::VectorXd& v) {
    return (v.array() - v[0]).abs().maxCoeff() == 0.0;
}

}  // namespace

double student_t_pvalue(double t, int dof, bool two_sided) {
    if (dof < 1) throw std::invalid_argument("student_t_pvalue: dof < 1");
    if (std::isinf(t)) return 0.0;
    if (std::isnan(t)) return kNaN;
    boost::math::students_t dist(static_cast<double>(dof));
    const double tail = boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
    return two_sided ? 2.0 * tail : tail;
}

double fisher_f_pvalue(double f, int dof1, int dof2) {
    if (dof1 < 1 || dof2 < 1) throw std::invalid_argument("fisher_f_pvalue: dof < 1");
    if (std::isinf(f)) return 0.0;
    if (std::isnan(f)) return kNaN;
    if (f <= 0.0) return 1.0;
    boost::math::fisher_f dist(static_cast<double>(dof1), static_cast<double>(dof2));
    return boost::math::cdf(boost::math::complement(dist, f));
}

OlsResult ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const OlsOptions& opts) {
    const int n = static_cast<int>(X.rows());
    const int k = static_cast<int>(X.cols());
    if (k < 1) throw std::invalid_argument("ols_fit: no regressors");
    if (y.size() != n) throw std::invalid_argument("ols_fit: X row count != y length");
    if (n < k + 2) throw std::invalid_argument("ols_fit: insufficient data (need n >= k + 2)");
    if (opts.with_intercept) {
        for (int j = 0; j < k; ++j) {
            if (is_constant(X.col(j))) {
                throw computation_error("singular design: column " + std::to_string(j) +
                                        " is constant");
            }
        }
    }

    const int p = opts.with_intercept ? k + 1 : k;
    Eigen::MatrixXd design(n, p);
    if (opts.with_intercept) {
        design.col(0).setOnes();
        design.rightCols(k) = X;
    } else {
        design = X;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < p) throw computation_error("singular design matrix (rank deficient)");
    const Eigen::VectorXd beta = qr.solve(y);

    OlsResult res;
    res.fitted = design * beta;
    res.residuals = y - res.fitted;
    res.ssr = res.residuals.squaredNorm();
    if (opts.with_intercept) {
        res.intercept = beta[0];
        res.coefficients = beta.tail(k);
    } else {
        res.intercept = 0.0;
        res.coefficients = beta;
    }

    // R^2 around the mean with an intercept, uncentered otherwise.
    const double sst = opts.with_intercept ? (y.array() - y.mean()).matrix().squaredNorm()
                                           : y.squaredNorm();
    res.r_squared = sst > 0.0 ? std::max(0.0, 1.0 - res.ssr / sst) : (res.ssr > 0.0 ? 0.0 : 1.0);

    const int dof = n - p;
    const double sigma2 = res.ssr / dof;
    const Eigen::MatrixXd xtx_inv =
        (design.transpose() * design).ldlt().solve(Eigen::MatrixXd::Identity(p, p));

    auto coef_pvalue = [&](int j, double value) {
        const double se = std::sqrt(std::max(0.0, sigma2 * xtx_inv(j, j)));
        if (se == 0.0) return value == 0.0 ? 1.0 : 0.0;
        return student_t_pvalue(value / se, dof, opts.two_sided);
    };
    res.t_pvalues.resize(k);
    const int offset = opts.with_intercept ? 1 : 0;
    for (int j = 0; j < k; ++j) res.t_pvalues[j] = coef_pvalue(offset + j, res.coefficients[j]);
    res.intercept_pvalue = opts.with_intercept ? coef_pvalue(0, res.intercept) : kNaN;

    // Overall F of the fitted model against the intercept-only (or zero) model.
    const double explained = std::max(0.0, sst - res.ssr);
    if (res.ssr == 0.0) {
        res.f_pvalue = 0.0;
    } else {
        res.f_pvalue = fisher_f_pvalue((explained / k) / sigma2, k, dof);
    }

    double err_sum = 0.0;
    int err_count = 0;
    for (int i = 0; i < n; ++i) {
        if (y[i] == 0.0) {
            ++res.zero_targets;
            continue;
        }
        err_sum += std::fabs(res.residuals[i]) / std::fabs(y[i]);
        ++err_count;
    }
    res.mean_relative_error = err_count > 0 ? err_sum / err_count : kNaN;
    return res;
}

Eigen::VectorXd vif(const Eigen::MatrixXd& X) {
    const int n = static_cast<int>(X.rows());
    const int k = static_cast<int>(X.cols());
    if (k < 2) throw std::invalid_argument("vif: need at least 2 columns");
    Eigen::VectorXd out(k);
    for (int j = 0; j < k; ++j) {
        if (is_constant(X.col(j))) throw std::invalid_argument("vif: constant column");
        Eigen::MatrixXd others(n, k);  // intercept + remaining columns
        others.col(0).setOnes();
        int c = 1;
        for (int m = 0; m < k; ++m) {
            if (m != j) others.col(c++) = X.col(m);
        }
        const Eigen::VectorXd target = X.col(j);
        const Eigen::VectorXd beta = others.colPivHouseholderQr().solve(target);
        const double sse = (target - others * beta).squaredNorm();
        const double sst = (target.array() - target.mean()).matrix().squaredNorm();
        const double r2 = sst > 0.0 ? 1.0 - sse / sst : 1.0;
        out[j] = r2 >= 1.0 - 1e-12 ? std::numeric_limits<double>::infinity()
                                   : 1.0 / (1.0 - r2);
    }
    return out;
}

double condition_number(const Eigen::MatrixXd& X) {
    const int k = static_cast<int>(X.cols());
    if (k < 1) throw std::invalid_argument("condition_number: empty design");
    Eigen::MatrixXd normalized = X;
    for (int j = 0; j < k; ++j) {
        const double norm = normalized.col(j).norm();
        if (norm == 0.0) throw validation_error("condition_number: zero column " + std::to_string(j));
        normalized.col(j) /= norm;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(normalized);
    const auto& sv = svd.singularValues();
    const double smallest = sv[sv.size() - 1];
    if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
    return sv[0] / smallest;
}

double pearson_or_nan(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) {
        throw std::invalid_argument("pearson: need equal lengths >= 3");
    }
    const std::size_t n = x.size();
    auto constant = [](std::span<const double> v) {
        for (double e : v) {
            if (e != v[0]) return false;
        }
        return true;
    };
    if (constant(x) || constant(y)) return kNaN;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return kNaN;
    return sxy / std::sqrt(sxx * syy);
}

double pearson(std::span<const double> x, std::span<const double> y) {
    const double r = pearson_or_nan(x, y);
    if (std::isnan(r)) throw computation_error("pearson: undefined correlation for constant input");
    return r;
}

}  // namespace econet
