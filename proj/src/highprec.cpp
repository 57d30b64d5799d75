#include "qcalab/highprec.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "qcalab/errors.hpp"

namespace qcalab {

BigMatrix::BigMatrix(std::size_t n, long digits) : n_(n), digits_(digits) {
    a_.reserve(n * n);
    for (std::size_t i = 0; i < n * n; ++i) a_.emplace_back(digits);
}

double BigMatrix::symmetry_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            worst = std::max(worst, std::abs((at(i, j) - at(j, i)).to_double()));
    return worst;
}

BigReal BigMatrix::frobenius_norm() const {
    BigReal acc(digits_);
    for (const auto& v : a_) acc += v * v;
    return acc.sqrt();
}

long required_digits(std::size_t M) {
    return static_cast<long>(std::ceil(0.80 * double(M))) + 30;
}

BigMatrix build_dbar_bigreal(std::size_t M, long precision) {
    if (M % 2 != 0) throw ValidationError("M must be even");
    if (precision < required_digits(M))
        throw PrecisionTooLowError("need at least " + std::to_string(required_digits(M)) +
                                   " digits for M=" + std::to_string(M));
    const std::size_t d = M + 1;
    BigMatrix out(d, precision);
    const BigReal pi = BigReal::pi(precision);
    const BigReal one(1.0, precision);
    const BigReal half(0.5, precision);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const long long n = std::llabs((long long)i - (long long)j);
            if (n == 0) {
                out.at(i, j) = half;
            } else if (n % 2 == 0) {
                out.at(i, j) = BigReal(0.0, precision);
            } else {
                BigReal v = one / (pi * BigReal(double(n), precision));
                if (((n - 1) / 2) % 2 == 1) v = -v;
                out.at(i, j) = v;
            }
        }
    return out;
}

namespace {

BigReal pow10_big(long e, long digits) {
    BigReal out(digits);
    mpfr_set_si(out.raw(), 10, MPFR_RNDN);
    mpfr_pow_si(out.raw(), out.raw(), e, MPFR_RNDN);
    return out;
}

BigReal offdiag_norm(const std::vector<BigReal>& a, std::size_t n, long digits) {
    BigReal acc(digits);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) acc += a[i * n + j] * a[i * n + j];
    return (acc + acc).sqrt();
}

}  // namespace

BigSpectrum jacobi_spectrum(const BigMatrix& in) {
    const std::size_t n = in.size();
    const long digits = in.digits();
    std::vector<BigReal> a;
    a.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.push_back(in.at(i, j));

    std::vector<BigReal> v;
    v.reserve(n * n);
    const BigReal one(1.0, digits), zero(0.0, digits);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v.push_back(i == j ? one : zero);

    const BigReal norm = in.frobenius_norm();
    const BigReal conv_tol = norm * pow10_big(-(digits - 10), digits);
    const BigReal rot_tol = norm * pow10_big(-(digits + 5), digits);

    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (!(offdiag_norm(a, n, digits) > conv_tol)) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const BigReal apq = a[p * n + q];
                if (!(apq.abs() > rot_tol)) continue;
                const BigReal app = a[p * n + p], aqq = a[q * n + q];
                const BigReal tau = (aqq - app) / (apq + apq);
                BigReal t = one / (tau.abs() + (one + tau * tau).sqrt());
                if (tau.sign() < 0) t = -t;
                const BigReal c = one / (one + t * t).sqrt();
                const BigReal s = t * c;
                // A <- J^T A J with J the (p,q) rotation [[c, s], [-s, c]]
                for (std::size_t i = 0; i < n; ++i) {
                    const BigReal aip = a[i * n + p], aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const BigReal apj = a[p * n + j], aqj = a[q * n + j];
                    a[p * n + j] = c * apj - s * aqj;
                    a[q * n + j] = s * apj + c * aqj;
                }
                a[p * n + q] = zero;
                a[q * n + p] = zero;
                for (std::size_t i = 0; i < n; ++i) {
                    const BigReal vip = v[i * n + p], viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
    }
    if (!converged && offdiag_norm(a, n, digits) > conv_tol)
        throw NoConvergenceError("high-precision Jacobi did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    BigSpectrum out;
    out.n = n;
    out.values.reserve(n);
    out.vectors.reserve(n * n);
    for (std::size_t c = 0; c < n; ++c) out.values.push_back(a[order[c] * n + order[c]]);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out.vectors.push_back(v[r * n + order[c]]);
    return out;
}

MinEigResult min_eigpair(const BigMatrix& a, long precision) {
    const std::size_t n = a.size();
    const double sym_tol = std::pow(10.0, double(-precision + 5));
    if (a.symmetry_defect() > std::max(sym_tol, 1e-300))
        throw ValidationError("matrix not symmetric at working precision");

    const BigSpectrum spec = jacobi_spectrum(a);
    MinEigResult out(precision);
    out.lambda_min = spec.values.front();
    out.eigenvector.clear();
    out.eigenvector.reserve(n);
    for (std::size_t r = 0; r < n; ++r) out.eigenvector.push_back(spec.vector_entry(r, 0));

    // residual ||A v - lambda v||
    BigReal acc(precision);
    for (std::size_t i = 0; i < n; ++i) {
        BigReal row(precision);
        for (std::size_t j = 0; j < n; ++j) row += a.at(i, j) * out.eigenvector[j];
        const BigReal r = row - out.lambda_min * out.eigenvector[i];
        acc += r * r;
    }
    out.residual = acc.sqrt();

    const BigReal bound = a.frobenius_norm() * pow10_big(-(precision - 15), precision);
    if (out.residual > bound)
        throw NoConvergenceError("eigenpair residual above precision contract");
    return out;
}

std::vector<SeriesPoint> min_eig_series(const std::vector<std::size_t>& m_values, long policy_floor) {
    for (std::size_t i = 1; i < m_values.size(); ++i)
        if (m_values[i] <= m_values[i - 1]) throw ValidationError("M values must be ascending");

    std::vector<std::future<SeriesPoint>> jobs;
    jobs.reserve(m_values.size());
    for (std::size_t m : m_values)
        jobs.push_back(std::async(std::launch::async, [m, policy_floor]() {
            const long digits = std::max(policy_floor, required_digits(m));
            const BigMatrix mat = build_dbar_bigreal(m, digits);
            MinEigResult r = min_eigpair(mat, digits);
            return SeriesPoint{m, r.lambda_min, r.residual, digits};
        }));
    std::vector<SeriesPoint> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace qcalab
