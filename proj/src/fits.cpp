#include "qcalab/fits.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qcalab/errors.hpp"

namespace qcalab {

namespace {

// ordinary least squares y = a + b x; returns {b, a}
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    const double b = (n * sxy - sx * sy) / denom;
    const double a = (sy - b * sx) / n;
    return {b, a};
}

double r_squared_of(const std::vector<double>& y, const std::vector<double>& model) {
    double mean = 0;
    for (double v : y) mean += v;
    mean /= double(y.size());
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss_res += (y[i] - model[i]) * (y[i] - model[i]);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
    return 1.0 - ss_res / ss_tot;
}

// solve 3x3 linear system in place (partial pivoting)
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        std::swap(m[c], m[piv]);
        if (m[c][c] == 0.0) throw DegenerateDataError("singular normal equations");
        for (int r = 0; r < 3; ++r) {
            if (r == c) continue;
            const double f = m[r][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace

FitResult fit_exp_decay(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw ValidationError("exponential fit needs at least 3 points");
    std::vector<double> x, y;
    x.reserve(points.size());
    y.reserve(points.size());
    for (const auto& [m, lambda] : points) {
        if (!(lambda > 0.0)) throw NonPositiveValueError("decay fit requires positive values");
        x.push_back(m);
        y.push_back(std::log(lambda));
    }
    const auto [slope, intercept] = linear_fit(x, y);
    FitResult out;
    out.parameters = {-slope, intercept};
    std::vector<double> model(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        model[i] = intercept + slope * x[i];
        out.residual_max = std::max(out.residual_max, std::abs(y[i] - model[i]));
    }
    out.r_squared = r_squared_of(y, model);
    return out;
}

FitResult fit_gaussian(const std::vector<double>& v) {
    if (v.size() < 5) throw ValidationError("gaussian fit needs at least 5 samples");
    std::vector<double> y(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) y[i] = std::abs(v[i]);
    const double ymax = *std::max_element(y.begin(), y.end());
    const double ymin = *std::min_element(y.begin(), y.end());
    if (ymax == 0.0 || ymax == ymin) throw DegenerateDataError("flat data");

    // log-domain quadratic initialization over samples above the floor
    const double floor = ymax * 1e-12;
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] <= floor) continue;
        const double xi = double(i), li = std::log(y[i]);
        const double x2 = xi * xi;
        s0 += 1;
        s1 += xi;
        s2 += x2;
        s3 += x2 * xi;
        s4 += x2 * x2;
        t0 += li;
        t1 += xi * li;
        t2 += x2 * li;
        ++used;
    }
    if (used < 5) throw DegenerateDataError("too few usable samples");
    const auto coef = solve3({{{s0, s1, s2, t0}, {s1, s2, s3, t1}, {s2, s3, s4, t2}}});
    const double p0 = coef[0], p1 = coef[1], p2 = coef[2];
    if (!(p2 < 0.0)) throw DegenerateDataError("data not unimodal in the log domain");
    double sigma2 = -1.0 / (2.0 * p2);
    double mu = p1 * sigma2;
    double amp = std::exp(p0 + mu * mu / (2.0 * sigma2));
    double sigma = std::sqrt(sigma2);

    // Gauss-Newton refinement with step halving
    auto sse = [&](double a, double m, double s) {
        double acc = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double z = (double(i) - m) / s;
            const double r = a * std::exp(-0.5 * z * z) - y[i];
            acc += r * r;
        }
        return acc;
    };
    double best = sse(amp, mu, sigma);
    for (int iter = 0; iter < 100; ++iter) {
        std::array<std::array<double, 4>, 3> nrm{};
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double z = (double(i) - mu) / sigma;
            const double e = std::exp(-0.5 * z * z);
            const double f = amp * e;
            const double r = f - y[i];
            const std::array<double, 3> j = {e, f * z / sigma, f * z * z / sigma};
            for (int p = 0; p < 3; ++p) {
                for (int q = 0; q < 3; ++q) nrm[p][q] += j[p] * j[q];
                nrm[p][3] -= j[p] * r;
            }
        }
        std::array<double, 3> step{};
        try {
            step = solve3(nrm);
        } catch (const DegenerateDataError&) {
            break;
        }
        double scale = 1.0;
        bool improved = false;
        for (int h = 0; h < 20; ++h) {
            const double na = amp + scale * step[0];
            const double nm = mu + scale * step[1];
            const double ns = sigma + scale * step[2];
            if (ns > 0.0) {
                const double val = sse(na, nm, ns);
                if (val < best) {
                    amp = na;
                    mu = nm;
                    sigma = ns;
                    best = val;
                    improved = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if (!improved) break;
    }

    FitResult out;
    out.parameters = {amp, mu, sigma};
    std::vector<double> model(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double z = (double(i) - mu) / sigma;
        model[i] = amp * std::exp(-0.5 * z * z);
        out.residual_max = std::max(out.residual_max, std::abs(model[i] - y[i]));
    }
    out.r_squared = r_squared_of(y, model);
    return out;
}

}  // namespace qcalab
