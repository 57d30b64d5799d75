#include "qcalab/eig.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcalab/errors.hpp"

namespace qcalab {

namespace {

constexpr std::size_t kJacobiCutover = 64;
constexpr double kClusterTol = 1e-10;

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One cyclic Jacobi pass zeroing a(p,q) via the unitary plane rotation
//   G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]],  a(p,q) = m e^{i phi}.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cdouble apq = a(p, q);
    const double m = std::abs(apq);
    if (m == 0.0) return;
    const cdouble phase = apq / m;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * m);
    double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                            : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.rows();
    const cdouble gpp(c, 0.0);
    const cdouble gpq(s, 0.0);
    const cdouble gqp = -s * std::conj(phase);
    const cdouble gqq = c * std::conj(phase);

    // A <- G† A G, columns then rows.
    for (std::size_t i = 0; i < n; ++i) {
        const cdouble aip = a(i, p), aiq = a(i, q);
        a(i, p) = aip * gpp + aiq * gqp;
        a(i, q) = aip * gpq + aiq * gqq;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const cdouble apj = a(p, j), aqj = a(q, j);
        a(p, j) = std::conj(gpp) * apj + std::conj(gqp) * aqj;
        a(q, j) = std::conj(gpq) * apj + std::conj(gqq) * aqj;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = cdouble(a(p, p).real(), 0.0);
    a(q, q) = cdouble(a(q, q).real(), 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        const cdouble vip = v(i, p), viq = v(i, q);
        v(i, p) = vip * gpp + viq * gqp;
        v(i, q) = vip * gpq + viq * gqq;
    }
}

EigenDecomposition eig_hermitian_jacobi(ComplexMatrix a) {
    const std::size_t n = a.rows();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(a.frobenius_norm(), 1e-300);
    const double target = 1e-15 * scale;
    for (int sweep = 0; sweep < 60; ++sweep) {
        if (offdiag_norm(a) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > target / (double)(n * n)) jacobi_rotate(a, v, p, q);
        if (sweep == 59 && offdiag_norm(a) > 1e-12 * scale)
            throw NoConvergenceError("Jacobi eigensolver failed to converge");
    }
    EigenDecomposition out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = cdouble(a(i, i).real(), 0.0);
    out.vectors = std::move(v);
    return out;
}

EigenDecomposition eig_hermitian_lapack(ComplexMatrix a) {
    const int n = static_cast<int>(a.rows());
    std::vector<double> w(n);
    const int info =
        LAPACKE_zheev(LAPACK_ROW_MAJOR, 'V', 'U', n,
                      reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
    if (info != 0) throw NoConvergenceError("zheev failed, info=" + std::to_string(info));
    EigenDecomposition out;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = cdouble(w[i], 0.0);
    out.vectors = std::move(a);  // zheev stores eigenvectors in the input slot
    return out;
}

void sort_by_key(EigenDecomposition& d, const std::vector<double>& key) {
    const std::size_t n = d.values.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return key[i] < key[j]; });
    EigenDecomposition s;
    s.values.resize(n);
    s.vectors = ComplexMatrix(d.vectors.rows(), n);
    for (std::size_t c = 0; c < n; ++c) {
        s.values[c] = d.values[idx[c]];
        for (std::size_t r = 0; r < d.vectors.rows(); ++r) s.vectors(r, c) = d.vectors(r, idx[c]);
    }
    d = std::move(s);
}

}  // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw NotHermitianError("eig_hermitian: matrix not square");
    const double tol = 1e-13 * std::max(1.0, h.frobenius_norm());
    if (h.hermiticity_defect() > tol)
        throw NotHermitianError("eig_hermitian: Hermiticity defect above tolerance");
    EigenDecomposition d = (h.rows() <= kJacobiCutover) ? eig_hermitian_jacobi(h)
                                                        : eig_hermitian_lapack(h);
    std::vector<double> key(d.values.size());
    for (std::size_t i = 0; i < key.size(); ++i) key[i] = d.values[i].real();
    sort_by_key(d, key);
    return d;
}

EigenDecomposition eig_unitary(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) throw NotUnitaryError("eig_unitary: matrix not square");
    if (u.unitarity_defect() > 1e-12 * std::max(1.0, std::sqrt((double)u.rows())))
        throw NotUnitaryError("eig_unitary: unitarity defect above tolerance");
    const std::size_t n = u.rows();
    const ComplexMatrix ud = u.dagger();
    ComplexMatrix hc = u;  // (U + U†)/2, the cos(phi) operator
    hc += ud;
    hc *= 0.5;
    ComplexMatrix hs = u;  // (U - U†)/2i, the sin(phi) operator
    hs -= ud;
    hs *= cdouble(0.0, -0.5);
    // force exact Hermiticity against rounding
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            hc(i, j) = 0.5 * (hc(i, j) + std::conj(hc(j, i)));
            hc(j, i) = std::conj(hc(i, j));
            hs(i, j) = 0.5 * (hs(i, j) + std::conj(hs(j, i)));
            hs(j, i) = std::conj(hs(i, j));
        }

    EigenDecomposition dc = eig_hermitian(hc);
    ComplexMatrix vec = dc.vectors;

    // split each cos-degenerate cluster with the sin operator
    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        while (stop < n && dc.values[stop].real() - dc.values[stop - 1].real() <= kClusterTol) ++stop;
        const std::size_t m = stop - start;
        if (m > 1) {
            ComplexMatrix w(n, m);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < m; ++c) w(r, c) = vec(r, start + c);
            ComplexMatrix proj = w.dagger() * (hs * w);
            EigenDecomposition sub = eig_hermitian(proj);
            ComplexMatrix rotated = w * sub.vectors;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < m; ++c) vec(r, start + c) = rotated(r, c);
        }
        start = stop;
    }

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = vec;
    std::vector<double> phases(n);
    for (std::size_t c = 0; c < n; ++c) {
        cdouble lam = 0.0;  // Rayleigh quotient v† U v
        for (std::size_t i = 0; i < n; ++i) {
            cdouble row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += u(i, j) * vec(j, c);
            lam += std::conj(vec(i, c)) * row;
        }
        double phi = std::atan2(lam.imag(), lam.real());
        if (phi <= -M_PI) phi = M_PI;
        phases[c] = phi;
        out.values[c] = std::polar(1.0, phi);
    }
    sort_by_key(out, phases);
    return out;
}

std::vector<double> unitary_phases(const EigenDecomposition& d) {
    std::vector<double> p(d.values.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        double phi = std::atan2(d.values[i].imag(), d.values[i].real());
        if (phi <= -M_PI) phi = M_PI;
        p[i] = phi;
    }
    return p;
}

ComplexMatrix exp_i_generator(const ComplexMatrix& g, double scale) {
    EigenDecomposition d = eig_hermitian(g);
    const std::size_t n = g.rows();
    ComplexMatrix phased(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const cdouble f = std::polar(1.0, scale * d.values[c].real());
        for (std::size_t r = 0; r < n; ++r) phased(r, c) = d.vectors(r, c) * f;
    }
    return phased * d.vectors.dagger();
}

}  // namespace qcalab
