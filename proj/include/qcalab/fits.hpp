#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace qcalab {

struct FitResult {
    std::vector<double> parameters;
    double r_squared = 0.0;
    double residual_max = 0.0;
};

/// Least squares of ln(lambda) against M: lambda ~ exp(log_prefactor) *
/// exp(-alpha M). parameters = {alpha, log_prefactor}. Throws
/// NonPositiveValueError on lambda <= 0.
FitResult fit_exp_decay(const std::vector<std::pair<double, double>>& points);

/// Nonlinear least squares of |v_j| against A exp(-(j-mu)^2 / 2 sigma^2),
/// j = 0-based index. Gauss-Newton seeded by a log-domain quadratic fit.
/// parameters = {amplitude, center, width}. Throws DegenerateDataError on
/// flat or non-unimodal data.
FitResult fit_gaussian(const std::vector<double>& v);

}  // namespace qcalab
