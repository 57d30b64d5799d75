#include "qcalab/internal_space.hpp"

#include <cmath>

#include "qcalab/errors.hpp"

namespace qcalab {

namespace {

const cdouble kI(0.0, 1.0);

ComplexMatrix pauli(int which) {
    switch (which) {
        case 1: return {{0.0, 1.0}, {1.0, 0.0}};
        case 2: return {{0.0, -kI}, {kI, 0.0}};
        default: return {{1.0, 0.0}, {0.0, -1.0}};
    }
}

}  // namespace

std::array<ComplexMatrix, 4> dirac_gammas() {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    std::array<ComplexMatrix, 4> g;
    g[0] = kron(pauli(3), i2);
    for (int j = 1; j <= 3; ++j) {
        // off-diagonal block form [[0, s_j], [-s_j, 0]]
        const ComplexMatrix s = pauli(j);
        ComplexMatrix m(4, 4);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) {
                m(r, c + 2) = s(r, c);
                m(r + 2, c) = -s(r, c);
            }
        g[j] = m;
    }
    return g;
}

std::array<ComplexMatrix, 3> spin1_generators() {
    ComplexMatrix jx = {{0.0, 0.0, 0.0}, {0.0, 0.0, -kI}, {0.0, kI, 0.0}};
    ComplexMatrix jy = {{0.0, 0.0, kI}, {0.0, 0.0, 0.0}, {-kI, 0.0, 0.0}};
    ComplexMatrix jz = {{0.0, -kI, 0.0}, {kI, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    return {jx, jy, jz};
}

InternalSpace build_fermion_space() {
    InternalSpace s;
    s.species = Species::Fermion;
    s.dim = 4;
    const auto g = dirac_gammas();
    s.Q = g[0];
    s.parity = g[0];
    const ComplexMatrix id = ComplexMatrix::identity(4);
    for (int j = 0; j < 3; ++j) {
        s.DeltaP[j] = g[0] * g[j + 1];
        s.P_plus[j] = 0.5 * (id + s.DeltaP[j]);
        s.P_minus[j] = 0.5 * (id - s.DeltaP[j]);
    }
    return s;
}

InternalSpace build_boson_space(bool doubled) {
    InternalSpace s;
    s.species = doubled ? Species::BosonDoubled : Species::Boson;
    s.dim = doubled ? 6 : 3;
    const auto j = spin1_generators();
    s.Q = ComplexMatrix::zero(s.dim, s.dim);
    s.P_zero.emplace();
    if (!doubled) {
        const ComplexMatrix id = ComplexMatrix::identity(3);
        for (int a = 0; a < 3; ++a) {
            const ComplexMatrix j2 = j[a] * j[a];
            s.P_plus[a] = 0.5 * (j2 + j[a]);
            s.P_minus[a] = 0.5 * (j2 - j[a]);
            (*s.P_zero)[a] = id - j2;
            s.DeltaP[a] = j[a];
        }
        return s;
    }
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix i3 = ComplexMatrix::identity(3);
    const ComplexMatrix sz = pauli(3);
    for (int a = 0; a < 3; ++a) {
        const ComplexMatrix j2 = j[a] * j[a];
        s.DeltaP[a] = kron(sz, j[a]);
        s.P_plus[a] = 0.5 * (kron(i2, j2) + s.DeltaP[a]);
        s.P_minus[a] = 0.5 * (kron(i2, j2) - s.DeltaP[a]);
        (*s.P_zero)[a] = kron(i2, i3 - j2);
    }
    s.parity = kron(pauli(1), i3);
    return s;
}

EqualNormReport verify_equal_norm(const InternalSpace& space) {
    EqualNormReport rep;
    const auto sandwich = [](const ComplexMatrix& outer, const ComplexMatrix& inner) {
        return outer * inner * outer;
    };
    const auto pick = [&](int axis, int sign) -> const ComplexMatrix& {
        return sign > 0 ? space.P_plus[axis] : space.P_minus[axis];
    };

    // calibrate c on the first cross-axis pair, then measure deviations
    const ComplexMatrix& p0 = space.P_plus[0];
    const double tr0 = p0.trace().real();
    rep.c = sandwich(p0, space.P_plus[1]).trace().real() / tr0;

    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            for (int ki : {+1, -1})
                for (int kj : {+1, -1}) {
                    const ComplexMatrix& o = pick(i, ki);
                    const ComplexMatrix d = sandwich(o, pick(j, kj)) - rep.c * o;
                    worst = std::max(worst, d.frobenius_norm());
                }
        }

    if (space.P_zero) {
        const double cp = sandwich(p0, (*space.P_zero)[1]).trace().real() / tr0;
        rep.c_prime = cp;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                for (int ki : {+1, -1}) {
                    const ComplexMatrix& o = pick(i, ki);
                    const ComplexMatrix d1 = sandwich(o, (*space.P_zero)[j]) - cp * o;
                    worst = std::max(worst, d1.frobenius_norm());
                    const ComplexMatrix& z = (*space.P_zero)[i];
                    const ComplexMatrix d2 = sandwich(z, pick(j, ki)) - cp * z;
                    worst = std::max(worst, d2.frobenius_norm());
                }
            }
    }

    rep.max_violation = worst;
    if (worst > 1e-12)
        throw ViolationAboveToleranceError("equal-norm condition violated beyond 1e-12");
    return rep;
}

}  // namespace qcalab
