#include "qcalab/toeplitz.hpp"

#include <cmath>

#include "qcalab/errors.hpp"

namespace qcalab {

void validate_spec(const ToeplitzSpec& spec) {
    if (spec.M % 2 != 0) throw ValidationError("M must be even");
    if (spec.N && *spec.N <= 2 * spec.M) throw ValidationError("exact form requires N > 2M");
    if (spec.N && *spec.N % 2 != 0) throw ValidationError("exact form requires even N");
}

double symbol_f(long long n) {
    if (n < 0) n = -n;
    if (n == 0) return 0.5;
    if (n % 2 == 0) return 0.0;
    const double v = 1.0 / (double(n) * M_PI);
    return (((n - 1) / 2) % 2 == 0) ? v : -v;
}

std::vector<double> dbar_matrix(const ToeplitzSpec& spec) {
    validate_spec(spec);
    const std::size_t d = spec.M + 1;
    std::vector<double> out(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const long long n = (long long)i - (long long)j;
            double v;
            if (!spec.N) {
                v = symbol_f(n);
            } else if (n == 0) {
                v = 0.5;
            } else {
                v = std::sin(M_PI * double(n) / 2.0) /
                    (double(*spec.N) * std::sin(M_PI * double(n) / double(*spec.N)));
            }
            out[i * d + j] = v;
        }
    return out;
}

cdouble d_complex_entry(long long n, std::size_t N) {
    const long long r = ((n % (long long)N) + (long long)N) % (long long)N;
    if (r == 0) return cdouble(0.5, 0.0);
    if (n % 2 == 0) return cdouble(0.0, 0.0);
    const double s = double(N) * std::sin(M_PI * double(n) / double(N));
    const double phi = -M_PI * double(n) / double(N);
    // -i e^{i phi} / s
    return cdouble(std::sin(phi) / s, -std::cos(phi) / s);
}

ComplexMatrix d_complex_matrix(const ToeplitzSpec& spec) {
    validate_spec(spec);
    if (!spec.N) throw ValidationError("complex coupling matrix needs finite N");
    const std::size_t d = spec.M + 1;
    ComplexMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            out(i, j) = d_complex_entry((long long)i - (long long)j, *spec.N);
    return out;
}

double f_tilde(double k, std::size_t terms) {
    if (terms < 1) throw ValidationError("f_tilde needs at least one term");
    double acc = 0.5;
    for (std::size_t n = 1; n <= terms; n += 2)
        acc += 2.0 * symbol_f((long long)n) * std::cos(double(n) * k);
    return acc;
}

double negative_coupling(const CouplingProfile& profile, const ToeplitzSpec& spec) {
    validate_spec(spec);
    if (!spec.N) throw ValidationError("coupling functional needs finite N");
    const std::size_t d = spec.M + 1;
    if (profile.v_plus.size() != d || profile.v_minus.size() != d)
        throw ValidationError("profile vectors must have M+1 entries");
    const ComplexMatrix dm = d_complex_matrix(spec);
    cdouble acc = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            acc += std::conj(profile.v_minus[i]) * dm(i, j) * profile.v_minus[j];
            acc += std::conj(profile.v_plus[i]) * std::conj(dm(i, j)) * profile.v_plus[j];
        }
    return acc.real();
}

double negative_coupling_momentum_sum(const CouplingProfile& profile, const ToeplitzSpec& spec) {
    validate_spec(spec);
    if (!spec.N) throw ValidationError("coupling functional needs finite N");
    const long N = (long)*spec.N;
    const long half = (long)spec.M / 2;
    double total = 0.0;
    for (long l = -N / 2; l <= N / 2; ++l) {
        if (l == 0) continue;
        const double k = 2.0 * M_PI * double(l) / double(N);
        const auto& v = (l > 0) ? profile.v_minus : profile.v_plus;
        cdouble amp = 0.0;
        for (long j = 0; j < (long)v.size(); ++j) {
            const long y = j - half;
            amp += std::polar(1.0, k * double(y)) * v[(std::size_t)j];
        }
        total += std::norm(amp) / double(N);
    }
    return total;
}

}  // namespace qcalab
