#include "qcalab/momentum.hpp"

#include <cmath>

#include "qcalab/eig.hpp"
#include "qcalab/errors.hpp"

namespace qcalab {

namespace {

const cdouble kI(0.0, 1.0);

void require_in_zone(const WalkConfig& cfg, const MomentumPoint& k) {
    const double lim = M_PI / cfg.dx;
    for (double c : {k.kx, k.ky, k.kz})
        if (c <= -lim - 1e-12 || c > lim + 1e-12)
            throw ValidationError("momentum component outside the Brillouin zone");
}

Vec3c cross(const std::array<double, 3>& a, const Vec3c& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

double MomentumPoint::norm() const { return std::sqrt(kx * kx + ky * ky + kz * kz); }

WalkConfig make_walk_config(Species species, double theta, double dx, double dt) {
    if (dx <= 0.0 || dt <= 0.0) throw ValidationError("dx and dt must be positive");
    WalkConfig cfg;
    switch (species) {
        case Species::Fermion: cfg.space = build_fermion_space(); break;
        case Species::Boson: cfg.space = build_boson_space(false); break;
        case Species::BosonDoubled: cfg.space = build_boson_space(true); break;
    }
    if (species != Species::Fermion && theta != 0.0)
        throw ThetaNonzeroForBosonError("boson walk requires theta = 0");
    cfg.theta = theta;
    cfg.dx = dx;
    cfg.dt = dt;
    return cfg;
}

ComplexMatrix walk_unitary_at_k(const WalkConfig& cfg, const MomentumPoint& k) {
    if (cfg.space.species != Species::Fermion && cfg.theta != 0.0)
        throw ThetaNonzeroForBosonError("boson walk requires theta = 0");
    require_in_zone(cfg, k);
    ComplexMatrix u = ComplexMatrix::identity(cfg.space.dim);
    if (cfg.theta != 0.0) u = exp_i_generator(cfg.space.Q, -cfg.theta);
    const double comps[3] = {k.kx, k.ky, k.kz};
    for (int j = 0; j < 3; ++j) {
        if (comps[j] == 0.0) continue;
        u = u * exp_i_generator(cfg.space.DeltaP[j], comps[j] * cfg.dx);
    }
    return u;
}

DispersionResult dispersion(const WalkConfig& cfg, const MomentumPoint& k) {
    const EigenDecomposition d = eig_unitary(walk_unitary_at_k(cfg, k));
    DispersionResult out;
    out.phases = unitary_phases(d);
    out.vectors = d.vectors;
    return out;
}

PolarizationBasis polarization_basis(const MomentumPoint& k) {
    const double kn = k.norm();
    if (kn == 0.0) throw ZeroMomentumError("polarization basis needs |k| > 0");
    PolarizationBasis b;
    b.v0 = {k.kx / kn, k.ky / kn, k.kz / kn};

    const double kxz2 = k.kx * k.kx + k.kz * k.kz;
    if (kxz2 >= 1e-12 * kn * kn) {
        const double den = std::sqrt(2.0 * kn * kn * kxz2);
        // helicity +1 / -1 eigenvectors of (k.J)
        b.v_plus = {(-kI * kn * k.kz - k.kx * k.ky) / den, (k.kx * k.kx + k.kz * k.kz) / den,
                    (kI * kn * k.kx - k.ky * k.kz) / den};
        b.v_minus = {(-kI * kn * k.kz + k.kx * k.ky) / den, -(k.kx * k.kx + k.kz * k.kz) / den,
                     (kI * kn * k.kx + k.ky * k.kz) / den};
        return b;
    }
    // k along ±ŷ: rotate the k ∥ x̂ basis (v± = (0, ±1, i)/√2) by the
    // rotation taking x̂ into k̂, i.e. ±90° about ẑ.
    const double s = (k.ky >= 0.0) ? 1.0 : -1.0;
    const double r = 1.0 / std::sqrt(2.0);
    // R_z(±90°) applied to (0, ±1, i)/√2
    b.v_plus = {cdouble(-s * r, 0.0), 0.0, cdouble(0.0, r)};
    b.v_minus = {cdouble(s * r, 0.0), 0.0, cdouble(0.0, r)};
    return b;
}

double maxwell_residual(const MomentumPoint& k, cdouble amplitude_plus, cdouble amplitude_minus,
                        double c_light) {
    const double kn = k.norm();
    if (kn == 0.0) throw ZeroMomentumError("maxwell residual needs |k| > 0");
    if (amplitude_plus == cdouble(0.0) && amplitude_minus == cdouble(0.0)) return 0.0;

    const PolarizationBasis pb = polarization_basis(k);
    Vec3c psi_plus{};
    for (int i = 0; i < 3; ++i)
        psi_plus[i] = amplitude_plus * pb.v_plus[i] + amplitude_minus * pb.v_minus[i];
    Vec3c psi_minus{std::conj(psi_plus[0]), std::conj(psi_plus[1]), std::conj(psi_plus[2])};

    const auto kj = spin1_generators();
    ComplexMatrix kdotj = k.kx * kj[0] + k.ky * kj[1] + k.kz * kj[2];
    const std::array<double, 3> kv = {k.kx, k.ky, k.kz};
    const Vec3c curl_plus = cross(kv, psi_plus);
    const Vec3c curl_minus = cross(kv, psi_minus);

    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        cdouble hp = 0.0, hm = 0.0;
        for (int j = 0; j < 3; ++j) {
            hp += kdotj(i, j) * psi_plus[j];
            hm += kdotj(i, j) * psi_minus[j];
        }
        const cdouble rp = c_light * hp - kI * c_light * curl_plus[i];
        const cdouble rm = -c_light * hm + kI * c_light * curl_minus[i];
        num += std::norm(rp) + std::norm(rm);
        den += std::norm(psi_plus[i]) + std::norm(psi_minus[i]);
    }
    return std::sqrt(num / den);
}

std::pair<ComplexMatrix, ComplexMatrix> qca_ab_factors(Axis axis, const MomentumPoint& k, double dx) {
    double kdx = 0.0;
    switch (axis) {
        case Axis::X: kdx = k.kx * dx; break;
        case Axis::Y: kdx = k.ky * dx; break;
        case Axis::Z: kdx = k.kz * dx; break;
    }
    const cdouble c(std::cos(kdx), 0.0), s(std::sin(kdx), 0.0);
    ComplexMatrix ea, eb;
    switch (axis) {
        case Axis::X:
            ea = {{1.0, 0.0, 0.0}, {0.0, -kI * c, kI * s}, {0.0, kI * s, kI * c}};
            eb = {{1.0, 0.0, 0.0}, {0.0, -kI, 0.0}, {0.0, 0.0, kI}};
            break;
        case Axis::Y:
            ea = {{kI * c, 0.0, -kI * s}, {0.0, 1.0, 0.0}, {-kI * s, 0.0, -kI * c}};
            eb = {{kI, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, -kI}};
            break;
        case Axis::Z:
            ea = {{-kI * c, kI * s, 0.0}, {kI * s, kI * c, 0.0}, {0.0, 0.0, 1.0}};
            eb = {{-kI, 0.0, 0.0}, {0.0, kI, 0.0}, {0.0, 0.0, 1.0}};
            break;
    }
    return {ea, eb};
}

namespace {

ComplexMatrix qca_c_product(const MomentumPoint& k, double dx) {
    ComplexMatrix out = ComplexMatrix::identity(3);
    for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
        auto [ea, eb] = qca_ab_factors(ax, k, dx);
        out = out * eb * ea;
    }
    return out;
}

}  // namespace

ComplexMatrix qca_c_matrix(const MomentumPoint& k, double dx, bool doubled) {
    const ComplexMatrix upper = qca_c_product(k, dx);
    if (!doubled) return upper;
    // doubling swaps the ± shift projectors in the lower block, which is the
    // same as reversing the momentum there (the on-site factors are symmetric
    // in ± and stay put)
    const ComplexMatrix lower = qca_c_product({-k.kx, -k.ky, -k.kz}, dx);
    ComplexMatrix out(6, 6);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            out(i, j) = upper(i, j);
            out(i + 3, j + 3) = lower(i, j);
        }
    return out;
}

ComplexMatrix qca_c_closed_form(const MomentumPoint& k, double dx) {
    const double cx = std::cos(k.kx * dx), cy = std::cos(k.ky * dx), cz = std::cos(k.kz * dx);
    const double sx = std::sin(k.kx * dx), sy = std::sin(k.ky * dx), sz = std::sin(k.kz * dx);
    return {{cy * cz, -cy * sz, sy},
            {cx * sz + sx * sy * cz, cx * cz - sx * sy * sz, -sx * cy},
            {sx * sz - cx * sy * cz, sx * cz + cx * sy * sz, cx * cy}};
}

QcaEigenphases qca_c_eigenphases(const MomentumPoint& k, double dx) {
    const double cx = std::cos(k.kx * dx), cy = std::cos(k.ky * dx), cz = std::cos(k.kz * dx);
    const double sx = std::sin(k.kx * dx), sy = std::sin(k.ky * dx), sz = std::sin(k.kz * dx);
    const double g = cx * cy + cy * cz + cz * cx - sx * sy * sz - 1.0;
    if (std::abs(g) > 2.0 + 1e-12)
        throw GOutOfRangeError("eigenphase argument G out of [-2, 2]");
    const double half = std::clamp(g / 2.0, -1.0, 1.0);
    QcaEigenphases out;
    out.phi_plus = std::acos(half);
    out.phi_minus = -out.phi_plus;
    return out;
}

}  // namespace qcalab
