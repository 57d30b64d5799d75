#include "qcalab/qca1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcalab/eig.hpp"
#include "qcalab/errors.hpp"

namespace qcalab {

namespace {

constexpr std::size_t kMaxFermionBits = 16;  // 2^16 amplitudes
constexpr std::size_t kMaxBosonDim = 1000000;

int popcount(std::size_t v) { return __builtin_popcountll(v); }

}  // namespace

void validate_config(const Lattice1DConfig& cfg) {
    if (cfg.n_sites < 2 || cfg.n_sites % 2 != 0)
        throw ValidationError("n_sites must be even and at least 2");
    if (cfg.species == LatticeSpecies::Boson && cfg.theta != 0.0)
        throw ThetaNonzeroForBosonError("boson lattice requires theta = 0");
}

namespace {

void enumerate_occupations(std::vector<std::uint8_t>& occ, std::size_t pos, std::size_t remaining,
                           std::vector<std::vector<std::uint8_t>>& out) {
    if (pos == occ.size()) {
        out.push_back(occ);
        if (out.size() > kMaxBosonDim) throw DimensionTooLargeError("boson basis too large");
        return;
    }
    for (std::size_t v = 0; v <= remaining; ++v) {
        occ[pos] = static_cast<std::uint8_t>(v);
        enumerate_occupations(occ, pos + 1, remaining - v, out);
    }
    occ[pos] = 0;
}

}  // namespace

BosonBasis::BosonBasis(std::size_t n_modes, std::size_t max_total)
    : n_modes_(n_modes), max_total_(max_total) {
    std::vector<std::uint8_t> occ(n_modes, 0);
    enumerate_occupations(occ, 0, max_total, states_);
}

std::size_t BosonBasis::index_of(const std::vector<std::uint8_t>& occ) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), occ);
    if (it == states_.end() || *it != occ) throw ValidationError("occupation outside basis");
    return static_cast<std::size_t>(it - states_.begin());
}

std::size_t state_dimension(const Lattice1DConfig& cfg) {
    validate_config(cfg);
    if (cfg.species == LatticeSpecies::Fermion) {
        if (2 * cfg.n_sites > kMaxFermionBits)
            throw DimensionTooLargeError("fermion lattice exceeds 2^16 amplitudes");
        return std::size_t(1) << (2 * cfg.n_sites);
    }
    BosonBasis b(2 * cfg.n_sites, cfg.boson_truncation);
    return b.dim();
}

ComplexMatrix coin_gate(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    ComplexMatrix g(4, 4);
    g(0, 0) = 1.0;
    g(1, 1) = s;   // |01> keeps sin(theta)
    g(2, 1) = c;   // |01> -> cos(theta)|10>
    g(1, 2) = c;   // |10> -> cos(theta)|01>
    g(2, 2) = -s;
    g(3, 3) = -1.0;
    return g;
}

ComplexMatrix shift_gate() { return coin_gate(0.0); }

LatticeState1D vacuum_state(const Lattice1DConfig& cfg) {
    LatticeState1D s{cfg, std::vector<cdouble>(state_dimension(cfg), 0.0)};
    s.amplitudes[0] = 1.0;  // vacuum is first in both basis orderings
    return s;
}

LatticeState1D single_excitation_state(const Lattice1DConfig& cfg, std::size_t x, bool minus) {
    LatticeState1D s{cfg, std::vector<cdouble>(state_dimension(cfg), 0.0)};
    const std::size_t m = mode_index(x, minus);
    if (cfg.species == LatticeSpecies::Fermion) {
        s.amplitudes[std::size_t(1) << m] = 1.0;
    } else {
        if (cfg.boson_truncation < 1) throw ValidationError("boson truncation below 1");
        BosonBasis basis(2 * cfg.n_sites, cfg.boson_truncation);
        std::vector<std::uint8_t> occ(2 * cfg.n_sites, 0);
        occ[m] = 1;
        s.amplitudes[basis.index_of(occ)] = 1.0;
    }
    return s;
}

double state_norm(const LatticeState1D& s) {
    double n = 0.0;
    for (const auto& a : s.amplitudes) n += std::norm(a);
    return std::sqrt(n);
}

std::string basis_label(const Lattice1DConfig& cfg, std::size_t idx, const BosonBasis* basis) {
    std::ostringstream os;
    if (cfg.species == LatticeSpecies::Fermion) {
        for (std::size_t m = 0; m < 2 * cfg.n_sites; ++m) os << ((idx >> m) & 1);
    } else {
        const auto& occ = basis->state(idx);
        for (std::size_t m = 0; m < occ.size(); ++m) {
            if (m) os << '.';
            os << int(occ[m]);
        }
    }
    return os.str();
}

std::vector<std::tuple<std::string, double, double>> export_records(const LatticeState1D& s) {
    std::vector<std::tuple<std::string, double, double>> out;
    out.reserve(s.amplitudes.size());
    std::optional<BosonBasis> basis;
    if (s.cfg.species == LatticeSpecies::Boson)
        basis.emplace(2 * s.cfg.n_sites, s.cfg.boson_truncation);
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
        out.emplace_back(basis_label(s.cfg, i, basis ? &*basis : nullptr), s.amplitudes[i].real(),
                         s.amplitudes[i].imag());
    return out;
}

LatticeState1D state_from_records(
    const Lattice1DConfig& cfg, const std::vector<std::tuple<std::string, double, double>>& recs) {
    LatticeState1D s{cfg, std::vector<cdouble>(state_dimension(cfg), 0.0)};
    std::optional<BosonBasis> basis;
    if (cfg.species == LatticeSpecies::Boson) basis.emplace(2 * cfg.n_sites, cfg.boson_truncation);
    for (const auto& [label, re, im] : recs) {
        std::size_t idx = 0;
        if (cfg.species == LatticeSpecies::Fermion) {
            if (label.size() != 2 * cfg.n_sites) throw ValidationError("bad fermion basis label: " + label);
            for (std::size_t m = 0; m < label.size(); ++m) {
                if (label[m] == '1')
                    idx |= std::size_t(1) << m;
                else if (label[m] != '0')
                    throw ValidationError("bad fermion basis label: " + label);
            }
        } else {
            std::vector<std::uint8_t> occ;
            std::istringstream is(label);
            std::string tok;
            while (std::getline(is, tok, '.')) occ.push_back(static_cast<std::uint8_t>(std::stoi(tok)));
            if (occ.size() != 2 * cfg.n_sites) throw ValidationError("bad boson basis label: " + label);
            idx = basis->index_of(occ);
        }
        s.amplitudes[idx] = cdouble(re, im);
    }
    return s;
}

Evolution1D::Evolution1D(const Lattice1DConfig& cfg) : cfg_(cfg) {
    validate_config(cfg);
    dim_ = state_dimension(cfg);
    if (cfg.species == LatticeSpecies::Boson) {
        basis_.emplace(2 * cfg.n_sites, cfg.boson_truncation);
        // cache exp(-i pi/2 H_t) per two-mode total occupation t,
        // H_t(n+1,n) = H_t(n,n+1) = sqrt((n+1)(t-n))
        swap_blocks_.resize(cfg.boson_truncation + 1);
        for (std::size_t t = 0; t <= cfg.boson_truncation; ++t) {
            ComplexMatrix h(t + 1, t + 1);
            for (std::size_t n = 0; n < t; ++n) {
                const double w = std::sqrt(double(n + 1) * double(t - n));
                h(n + 1, n) = w;
                h(n, n + 1) = w;
            }
            swap_blocks_[t] = exp_i_generator(h, -M_PI / 2.0);
        }
    }
}

Evolution1D build_evolution(const Lattice1DConfig& cfg) { return Evolution1D(cfg); }

void Evolution1D::apply_fermion_gate(std::vector<cdouble>& v, const ComplexMatrix& g, std::size_t q1,
                                     std::size_t q2, std::size_t inner) const {
    const std::size_t b1 = std::size_t(1) << q1;
    const std::size_t b2 = std::size_t(1) << q2;
    const std::size_t n_outer = v.size() / inner / dim_;
    for (std::size_t o = 0; o < n_outer; ++o) {
        const std::size_t base_o = o * dim_ * inner;
        for (std::size_t f = 0; f < dim_; ++f) {
            if (f & (b1 | b2)) continue;
            const std::size_t i00 = base_o + f * inner;
            const std::size_t i01 = base_o + (f | b2) * inner;
            const std::size_t i10 = base_o + (f | b1) * inner;
            const std::size_t i11 = base_o + (f | b1 | b2) * inner;
            for (std::size_t in = 0; in < inner; ++in) {
                const cdouble a00 = v[i00 + in], a01 = v[i01 + in], a10 = v[i10 + in],
                              a11 = v[i11 + in];
                v[i00 + in] = g(0, 0) * a00 + g(0, 1) * a01 + g(0, 2) * a10 + g(0, 3) * a11;
                v[i01 + in] = g(1, 0) * a00 + g(1, 1) * a01 + g(1, 2) * a10 + g(1, 3) * a11;
                v[i10 + in] = g(2, 0) * a00 + g(2, 1) * a01 + g(2, 2) * a10 + g(2, 3) * a11;
                v[i11 + in] = g(3, 0) * a00 + g(3, 1) * a01 + g(3, 2) * a10 + g(3, 3) * a11;
            }
        }
    }
}

void Evolution1D::apply_boson_swap(std::vector<cdouble>& v, std::size_t p, std::size_t q, bool dagger,
                                   std::size_t inner) const {
    const std::size_t n_outer = v.size() / inner / dim_;
    std::vector<cdouble> out(v.size(), 0.0);
    std::vector<std::uint8_t> occ;
    for (std::size_t i = 0; i < dim_; ++i) {
        occ = basis_->state(i);
        const std::size_t np = occ[p], nq = occ[q];
        const std::size_t t = np + nq;
        const ComplexMatrix& blk = swap_blocks_[t];
        for (std::size_t npp = 0; npp <= t; ++npp) {
            cdouble g = blk(npp, np);
            if (dagger) g = std::conj(blk(np, npp));
            if (g == cdouble(0.0)) continue;
            occ[p] = static_cast<std::uint8_t>(npp);
            occ[q] = static_cast<std::uint8_t>(t - npp);
            const std::size_t j = basis_->index_of(occ);
            for (std::size_t o = 0; o < n_outer; ++o) {
                const std::size_t src = (o * dim_ + i) * inner;
                const std::size_t dst = (o * dim_ + j) * inner;
                for (std::size_t in = 0; in < inner; ++in) out[dst + in] += g * v[src + in];
            }
        }
        occ[p] = static_cast<std::uint8_t>(np);
        occ[q] = static_cast<std::uint8_t>(nq);
    }
    v.swap(out);
}

void Evolution1D::apply_coin(std::vector<cdouble>& v, bool dagger, std::size_t inner) const {
    const std::size_t n = cfg_.n_sites;
    if (cfg_.species == LatticeSpecies::Fermion) {
        ComplexMatrix g = coin_gate(cfg_.theta);
        if (dagger) g = g.dagger();
        for (std::size_t x = 0; x < n; ++x)
            apply_fermion_gate(v, g, mode_index(x, false), mode_index(x, true), inner);
    } else {
        for (std::size_t x = 0; x < n; ++x)
            apply_boson_swap(v, mode_index(x, false), mode_index(x, true), dagger, inner);
    }
}

void Evolution1D::apply_shift(std::vector<cdouble>& v, bool dagger, std::size_t inner) const {
    const std::size_t n = cfg_.n_sites;
    if (cfg_.species == LatticeSpecies::Fermion) {
        ComplexMatrix g = shift_gate();
        if (dagger) g = g.dagger();
        for (std::size_t x = 0; x < n; ++x)
            apply_fermion_gate(v, g, mode_index(x, false), mode_index((x + 1) % n, true), inner);
    } else {
        for (std::size_t x = 0; x < n; ++x)
            apply_boson_swap(v, mode_index(x, false), mode_index((x + 1) % n, true), dagger, inner);
    }
}

void Evolution1D::apply(std::vector<cdouble>& v, std::size_t inner) const {
    apply_shift(v, false, inner);
    apply_coin(v, false, inner);
}

void Evolution1D::apply_dagger(std::vector<cdouble>& v, std::size_t inner) const {
    apply_coin(v, true, inner);
    apply_shift(v, true, inner);
}

void Evolution1D::apply_plus_mode_sign(std::vector<cdouble>& v, std::size_t inner) const {
    const std::size_t n_outer = v.size() / inner / dim_;
    for (std::size_t i = 0; i < dim_; ++i) {
        std::size_t occ_plus = 0;
        if (cfg_.species == LatticeSpecies::Fermion) {
            for (std::size_t x = 0; x < cfg_.n_sites; ++x)
                occ_plus += (i >> mode_index(x, false)) & 1;
        } else {
            const auto& occ = basis_->state(i);
            for (std::size_t x = 0; x < cfg_.n_sites; ++x) occ_plus += occ[mode_index(x, false)];
        }
        if (occ_plus % 2 == 0) continue;
        for (std::size_t o = 0; o < n_outer; ++o) {
            const std::size_t base = (o * dim_ + i) * inner;
            for (std::size_t in = 0; in < inner; ++in) v[base + in] = -v[base + in];
        }
    }
}

void Evolution1D::apply_tau(std::vector<cdouble>& v, bool dagger, std::size_t inner) const {
    if (cfg_.species == LatticeSpecies::Fermion) {
        // gate tables are real symmetric involutions: tau = tau† = C_layer
        apply_coin(v, dagger, inner);
        return;
    }
    if (!dagger) {
        apply_plus_mode_sign(v, inner);  // V† = V
        apply_coin(v, false, inner);
    } else {
        apply_coin(v, true, inner);
        apply_plus_mode_sign(v, inner);
    }
}

ComplexMatrix Evolution1D::to_matrix(std::size_t max_dim) const {
    if (dim_ > max_dim) throw DimensionTooLargeError("dense evolution matrix too large");
    ComplexMatrix m = ComplexMatrix::identity(dim_);
    std::vector<cdouble> flat(m.data(), m.data() + dim_ * dim_);
    apply(flat, dim_);
    std::copy(flat.begin(), flat.end(), m.data());
    return m;
}

ComplexMatrix Evolution1D::single_particle_block() const {
    const std::size_t n_modes = 2 * cfg_.n_sites;
    ComplexMatrix block(n_modes, n_modes);
    for (std::size_t m = 0; m < n_modes; ++m) {
        LatticeState1D s = single_excitation_state(cfg_, m / 2, m % 2 == 1);
        apply(s.amplitudes);
        for (std::size_t mp = 0; mp < n_modes; ++mp) {
            std::size_t idx;
            if (cfg_.species == LatticeSpecies::Fermion) {
                idx = std::size_t(1) << mp;
            } else {
                std::vector<std::uint8_t> occ(n_modes, 0);
                occ[mp] = 1;
                idx = basis_->index_of(occ);
            }
            block(mp, m) = s.amplitudes[idx];
        }
    }
    return block;
}

LatticeState1D Evolution1D::step(const LatticeState1D& in, std::size_t n_steps) const {
    LatticeState1D out = in;
    for (std::size_t i = 0; i < n_steps; ++i) apply(out.amplitudes);
    return out;
}

ComplexMatrix single_particle_block(const Lattice1DConfig& cfg) {
    return Evolution1D(cfg).single_particle_block();
}

double time_reversal_defect(const Lattice1DConfig& cfg) {
    Evolution1D ev(cfg);
    const std::size_t dim = ev.dim();
    const std::size_t block = std::min<std::size_t>(dim, 256);
    double acc = 0.0;
    std::vector<cdouble> lhs, rhs;
    for (std::size_t c0 = 0; c0 < dim; c0 += block) {
        const std::size_t nc = std::min(block, dim - c0);
        lhs.assign(dim * nc, 0.0);
        for (std::size_t c = 0; c < nc; ++c) lhs[(c0 + c) * nc + c] = 1.0;
        rhs = lhs;
        // tau U tau† on the identity block
        ev.apply_tau(lhs, true, nc);
        ev.apply(lhs, nc);
        ev.apply_tau(lhs, false, nc);
        // U† on the identity block
        ev.apply_dagger(rhs, nc);
        for (std::size_t i = 0; i < lhs.size(); ++i) acc += std::norm(lhs[i] - rhs[i]);
    }
    return std::sqrt(acc);
}

std::size_t alpha_slot(bool l_minus, bool m_minus, bool n_minus) {
    return (l_minus ? 4 : 0) + (m_minus ? 2 : 0) + (n_minus ? 1 : 0);
}

namespace {

struct TermAction {
    // fermion bilinear b†_{x,m} b_{x,n} on a bitmask; returns factor 0 or 1
    static std::size_t fermion_bilinear(std::size_t f, std::size_t x, bool m_minus, bool n_minus,
                                        std::size_t n_sites, double& factor) {
        const std::size_t pm = mode_index(x, m_minus), pn = mode_index(x, n_minus);
        (void)n_sites;
        factor = 0.0;
        if (!((f >> pn) & 1)) return f;
        const std::size_t f1 = f & ~(std::size_t(1) << pn);
        if ((f1 >> pm) & 1) return f;
        factor = 1.0;  // on-site bilinears pick up no string sign
        return f1 | (std::size_t(1) << pm);
    }
};

void check_coeffs(const InteractionCoeffs& coeffs, std::size_t n_sites) {
    if (coeffs.range % 2 != 0) throw ValidationError("interaction range M must be even");
    if (!coeffs.profile.empty() && coeffs.profile.size() != coeffs.range + 1)
        throw ValidationError("profile must have range+1 offsets");
    if (!coeffs.site_scale.empty() && coeffs.site_scale.size() != n_sites)
        throw ValidationError("site_scale must have one entry per site");
}

}  // namespace

InteractionUnitary::InteractionUnitary(const Lattice1DConfig& cfg_f, const Lattice1DConfig& cfg_b,
                                       const InteractionCoeffs& coeffs) {
    validate_config(cfg_f);
    validate_config(cfg_b);
    if (cfg_f.species != LatticeSpecies::Fermion || cfg_b.species != LatticeSpecies::Boson)
        throw ValidationError("interaction couples a fermion lattice to a boson lattice");
    if (cfg_f.n_sites != cfg_b.n_sites)
        throw ValidationError("interaction requires matching lattice sizes");
    check_coeffs(coeffs, cfg_f.n_sites);

    const std::size_t n = cfg_f.n_sites;
    dim_f_ = state_dimension(cfg_f);
    BosonBasis basis(2 * n, cfg_b.boson_truncation);
    dim_b_ = basis.dim();
    if (dim_f_ * dim_b_ > kMaxBosonDim) throw DimensionTooLargeError("joint space too large");

    const std::size_t n_modes_f = 2 * n;
    sector_fermion_states_.resize(n_modes_f + 1);
    for (std::size_t f = 0; f < dim_f_; ++f)
        sector_fermion_states_[popcount(f)].push_back(f);

    std::vector<cdouble> profile = coeffs.profile;
    if (profile.empty()) profile = {1.0};
    const long half = static_cast<long>(coeffs.range) / 2;

    sector_blocks_.resize(n_modes_f + 1);
    for (std::size_t nf = 0; nf <= n_modes_f; ++nf) {
        const auto& fstates = sector_fermion_states_[nf];
        const std::size_t df = fstates.size();
        const std::size_t d = df * dim_b_;
        // position of each fermion bitmask inside the sector
        std::vector<std::size_t> fpos(dim_f_, 0);
        for (std::size_t i = 0; i < df; ++i) fpos[fstates[i]] = i;

        ComplexMatrix h(d, d);
        std::vector<std::uint8_t> occ;
        for (std::size_t fi = 0; fi < df; ++fi) {
            const std::size_t f = fstates[fi];
            for (std::size_t x = 0; x < n; ++x) {
                const double sscale = coeffs.site_scale.empty() ? 1.0 : coeffs.site_scale[x];
                for (int lm = 0; lm < 2; ++lm)
                    for (int mm = 0; mm < 2; ++mm)
                        for (int nm = 0; nm < 2; ++nm) {
                            for (long y = -half; y <= half; ++y) {
                                const cdouble c = coeffs.alpha[alpha_slot(lm, mm, nm)] *
                                                  profile[static_cast<std::size_t>(y + half)] * sscale;
                                if (c == cdouble(0.0)) continue;
                                const std::size_t xb =
                                    static_cast<std::size_t>(((long)x + y + (long)n) % (long)n);
                                const std::size_t bm = mode_index(xb, lm);

                                // c * a_{x+y,l} b†_{x,m} b_{x,n}
                                double ff = 0.0;
                                const std::size_t f1 =
                                    TermAction::fermion_bilinear(f, x, mm, nm, n, ff);
                                if (ff != 0.0) {
                                    for (std::size_t bi = 0; bi < dim_b_; ++bi) {
                                        occ = basis.state(bi);
                                        if (occ[bm] == 0) continue;
                                        const double bf = std::sqrt(double(occ[bm]));
                                        occ[bm] -= 1;
                                        const std::size_t bj = basis.index_of(occ);
                                        h(fpos[f1] * dim_b_ + bj, fi * dim_b_ + bi) += c * ff * bf;
                                    }
                                }
                                // conj(c) * a†_{x+y,l} b†_{x,n} b_{x,m}
                                double fg = 0.0;
                                const std::size_t f2 =
                                    TermAction::fermion_bilinear(f, x, nm, mm, n, fg);
                                if (fg != 0.0) {
                                    for (std::size_t bi = 0; bi < dim_b_; ++bi) {
                                        occ = basis.state(bi);
                                        std::size_t tot = 0;
                                        for (auto v : occ) tot += v;
                                        if (tot >= cfg_b.boson_truncation) continue;
                                        const double bf = std::sqrt(double(occ[bm]) + 1.0);
                                        occ[bm] += 1;
                                        const std::size_t bj = basis.index_of(occ);
                                        h(fpos[f2] * dim_b_ + bj, fi * dim_b_ + bi) +=
                                            std::conj(c) * fg * bf;
                                    }
                                }
                            }
                        }
            }
        }
        // exact exponential exp(-i h) of the sector Hamiltonian
        EigenDecomposition ed = eig_hermitian(h);
        ComplexMatrix phased(d, d);
        for (std::size_t col = 0; col < d; ++col) {
            const cdouble ph = std::polar(1.0, -ed.values[col].real());
            for (std::size_t row = 0; row < d; ++row) phased(row, col) = ed.vectors(row, col) * ph;
        }
        sector_blocks_[nf] = phased * ed.vectors.dagger();
    }
}

void InteractionUnitary::apply(std::vector<cdouble>& v) const {
    if (v.size() != dim()) throw ValidationError("joint state dimension mismatch");
    std::vector<cdouble> sub, res;
    for (std::size_t nf = 0; nf < sector_blocks_.size(); ++nf) {
        const auto& fstates = sector_fermion_states_[nf];
        const std::size_t d = fstates.size() * dim_b_;
        sub.resize(d);
        for (std::size_t i = 0; i < fstates.size(); ++i)
            std::copy_n(v.begin() + fstates[i] * dim_b_, dim_b_, sub.begin() + i * dim_b_);
        res = sector_blocks_[nf].apply(sub);
        for (std::size_t i = 0; i < fstates.size(); ++i)
            std::copy_n(res.begin() + i * dim_b_, dim_b_, v.begin() + fstates[i] * dim_b_);
    }
}

ComplexMatrix InteractionUnitary::multiply_dense(const ComplexMatrix& w) const {
    if (w.rows() != dim()) throw ValidationError("joint matrix dimension mismatch");
    ComplexMatrix out(w.rows(), w.cols());
    for (std::size_t nf = 0; nf < sector_blocks_.size(); ++nf) {
        const auto& fstates = sector_fermion_states_[nf];
        const std::size_t rows = fstates.size() * dim_b_;
        ComplexMatrix gathered(rows, w.cols());
        for (std::size_t i = 0; i < fstates.size(); ++i)
            for (std::size_t b = 0; b < dim_b_; ++b)
                std::copy_n(&w(fstates[i] * dim_b_ + b, 0), w.cols(), &gathered(i * dim_b_ + b, 0));
        ComplexMatrix prod = sector_blocks_[nf] * gathered;
        for (std::size_t i = 0; i < fstates.size(); ++i)
            for (std::size_t b = 0; b < dim_b_; ++b)
                std::copy_n(&prod(i * dim_b_ + b, 0), w.cols(), &out(fstates[i] * dim_b_ + b, 0));
    }
    return out;
}

ComplexMatrix InteractionUnitary::to_matrix(std::size_t max_dim) const {
    if (dim() > max_dim) throw DimensionTooLargeError("dense interaction matrix too large");
    return multiply_dense(ComplexMatrix::identity(dim()));
}

ComplexMatrix interaction_hamiltonian(const Lattice1DConfig& cfg_f, const Lattice1DConfig& cfg_b,
                                      const InteractionCoeffs& coeffs, std::size_t max_dim) {
    validate_config(cfg_f);
    validate_config(cfg_b);
    check_coeffs(coeffs, cfg_f.n_sites);
    const std::size_t n = cfg_f.n_sites;
    const std::size_t dim_f = state_dimension(cfg_f);
    BosonBasis basis(2 * n, cfg_b.boson_truncation);
    const std::size_t dim_b = basis.dim();
    if (dim_f * dim_b > max_dim) throw DimensionTooLargeError("joint space too large for dense H");

    std::vector<cdouble> profile = coeffs.profile;
    if (profile.empty()) profile = {1.0};
    const long half = static_cast<long>(coeffs.range) / 2;

    ComplexMatrix h(dim_f * dim_b, dim_f * dim_b);
    std::vector<std::uint8_t> occ;
    for (std::size_t f = 0; f < dim_f; ++f)
        for (std::size_t x = 0; x < n; ++x) {
            const double sscale = coeffs.site_scale.empty() ? 1.0 : coeffs.site_scale[x];
            for (int lm = 0; lm < 2; ++lm)
                for (int mm = 0; mm < 2; ++mm)
                    for (int nm = 0; nm < 2; ++nm)
                        for (long y = -half; y <= half; ++y) {
                            const cdouble c = coeffs.alpha[alpha_slot(lm, mm, nm)] *
                                              profile[static_cast<std::size_t>(y + half)] * sscale;
                            if (c == cdouble(0.0)) continue;
                            const std::size_t xb =
                                static_cast<std::size_t>(((long)x + y + (long)n) % (long)n);
                            const std::size_t bm = mode_index(xb, lm);
                            double ff = 0.0;
                            const std::size_t f1 = TermAction::fermion_bilinear(f, x, mm, nm, n, ff);
                            if (ff != 0.0)
                                for (std::size_t bi = 0; bi < dim_b; ++bi) {
                                    occ = basis.state(bi);
                                    if (occ[bm] == 0) continue;
                                    const double bf = std::sqrt(double(occ[bm]));
                                    occ[bm] -= 1;
                                    h(f1 * dim_b + basis.index_of(occ), f * dim_b + bi) += c * ff * bf;
                                }
                            double fg = 0.0;
                            const std::size_t f2 = TermAction::fermion_bilinear(f, x, nm, mm, n, fg);
                            if (fg != 0.0)
                                for (std::size_t bi = 0; bi < dim_b; ++bi) {
                                    occ = basis.state(bi);
                                    std::size_t tot = 0;
                                    for (auto v : occ) tot += v;
                                    if (tot >= cfg_b.boson_truncation) continue;
                                    const double bf = std::sqrt(double(occ[bm]) + 1.0);
                                    occ[bm] += 1;
                                    h(f2 * dim_b + basis.index_of(occ), f * dim_b + bi) +=
                                        std::conj(c) * fg * bf;
                                }
                        }
        }
    return h;
}

std::vector<std::size_t> translation_permutation(const Lattice1DConfig& cfg) {
    validate_config(cfg);
    const std::size_t n = cfg.n_sites;
    const std::size_t dim = state_dimension(cfg);
    std::vector<std::size_t> perm(dim);
    if (cfg.species == LatticeSpecies::Fermion) {
        for (std::size_t f = 0; f < dim; ++f) {
            std::size_t g = 0;
            for (std::size_t x = 0; x < n; ++x)
                for (int o = 0; o < 2; ++o)
                    if ((f >> (2 * x + o)) & 1) g |= std::size_t(1) << (2 * ((x + 1) % n) + o);
            perm[f] = g;
        }
    } else {
        BosonBasis basis(2 * n, cfg.boson_truncation);
        std::vector<std::uint8_t> shifted(2 * n);
        for (std::size_t i = 0; i < dim; ++i) {
            const auto& occ = basis.state(i);
            for (std::size_t x = 0; x < n; ++x)
                for (int o = 0; o < 2; ++o) shifted[2 * ((x + 1) % n) + o] = occ[2 * x + o];
            perm[i] = basis.index_of(shifted);
        }
    }
    return perm;
}

std::vector<std::size_t> joint_translation_permutation(const Lattice1DConfig& cfg_f,
                                                       const Lattice1DConfig& cfg_b) {
    const auto pf = translation_permutation(cfg_f);
    const auto pb = translation_permutation(cfg_b);
    std::vector<std::size_t> perm(pf.size() * pb.size());
    for (std::size_t f = 0; f < pf.size(); ++f)
        for (std::size_t b = 0; b < pb.size(); ++b)
            perm[f * pb.size() + b] = pf[f] * pb.size() + pb[b];
    return perm;
}

double translation_commutator_norm(const ComplexMatrix& u, const std::vector<std::size_t>& perm) {
    if (u.rows() != u.cols() || u.rows() != perm.size())
        throw ValidationError("permutation length must match matrix dimension");
    // ||U P - P U||_F = ||U - P U P†||_F ; (P U P†)(i,j) = U(pinv(i), pinv(j))
    std::vector<std::size_t> pinv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) pinv[perm[i]] = i;
    double acc = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j)
            acc += std::norm(u(i, j) - u(pinv[i], pinv[j]));
    return std::sqrt(acc);
}

double translation_commutator(const ComplexMatrix& u, const Lattice1DConfig& cfg_f,
                              const Lattice1DConfig& cfg_b) {
    return translation_commutator_norm(u, joint_translation_permutation(cfg_f, cfg_b));
}

double ModePopulations::total_positive() const {
    double t = 0.0;
    for (double v : positive) t += v;
    return t;
}

double ModePopulations::total_negative() const {
    double t = 0.0;
    for (double v : negative) t += v;
    return t;
}

namespace {

ModePopulations populations_from_amplitudes(const std::vector<cdouble>& amps,
                                            std::size_t n_fermion_blocks,
                                            const Lattice1DConfig& cfg) {
    const std::size_t n = cfg.n_sites;
    BosonBasis basis(2 * n, cfg.boson_truncation);
    if (amps.size() != n_fermion_blocks * basis.dim())
        throw ValidationError("state dimension mismatch in mode populations");

    // one-body correlators G^s(x', x) = <a†_{x',s} a_{x,s}>, traced over the
    // fermion blocks when present
    std::array<ComplexMatrix, 2> corr{ComplexMatrix(n, n), ComplexMatrix(n, n)};
    std::vector<std::uint8_t> occ;
    for (int s = 0; s < 2; ++s)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t xp = 0; xp < n; ++xp) {
                const std::size_t mx = mode_index(x, s == 1);
                const std::size_t mxp = mode_index(xp, s == 1);
                cdouble g = 0.0;
                for (std::size_t i = 0; i < basis.dim(); ++i) {
                    occ = basis.state(i);
                    if (occ[mx] == 0) continue;
                    double f = std::sqrt(double(occ[mx]));
                    occ[mx] -= 1;
                    f *= std::sqrt(double(occ[mxp]) + 1.0);
                    occ[mxp] += 1;
                    const std::size_t j = basis.index_of(occ);
                    for (std::size_t fb = 0; fb < n_fermion_blocks; ++fb) {
                        const cdouble a = amps[fb * basis.dim() + i];
                        if (a == cdouble(0.0)) continue;
                        g += std::conj(amps[fb * basis.dim() + j]) * f * a;
                    }
                }
                corr[s](xp, x) = g;
            }

    ModePopulations out;
    const long half = static_cast<long>(n) / 2;
    for (long l = -half + 1; l <= half; ++l) {
        const double k = 2.0 * M_PI * double(l) / double(n);
        double pop[2] = {0.0, 0.0};  // per branch +(0), -(1)
        for (int s = 0; s < 2; ++s) {
            cdouble acc = 0.0;
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t xp = 0; xp < n; ++xp)
                    acc += std::polar(1.0, k * (double(x) - double(xp))) * corr[s](xp, x);
            pop[s] = acc.real() / double(n);
        }
        // branch bookkeeping: (k,+) positive for 0 <= l < N/2, (k,-) positive
        // for -N/2 < l <= 0; the rest negative
        double pos = 0.0, neg = 0.0;
        if (l >= 0 && l < half) pos += pop[0]; else neg += pop[0];
        if (l <= 0) pos += pop[1]; else neg += pop[1];
        out.k.push_back(k);
        out.positive.push_back(pos);
        out.negative.push_back(neg);
    }
    return out;
}

}  // namespace

ModePopulations negative_mode_population(const LatticeState1D& state) {
    const Lattice1DConfig& cfg = state.cfg;
    if (cfg.species != LatticeSpecies::Boson)
        throw ValidationError("mode populations are defined for boson states");
    validate_config(cfg);
    return populations_from_amplitudes(state.amplitudes, 1, cfg);
}

ModePopulations joint_negative_mode_population(const std::vector<cdouble>& joint,
                                               const Lattice1DConfig& cfg_f,
                                               const Lattice1DConfig& cfg_b) {
    if (cfg_b.species != LatticeSpecies::Boson)
        throw ValidationError("mode populations are defined for boson states");
    validate_config(cfg_b);
    return populations_from_amplitudes(joint, state_dimension(cfg_f), cfg_b);
}

LatticeState1D momentum_excitation_state(const Lattice1DConfig& cfg, long l, bool minus) {
    validate_config(cfg);
    if (cfg.species != LatticeSpecies::Boson)
        throw ValidationError("momentum excitation helper is for boson lattices");
    if (cfg.boson_truncation < 1) throw ValidationError("boson truncation below 1");
    const std::size_t n = cfg.n_sites;
    const double k = 2.0 * M_PI * double(l) / double(n);
    LatticeState1D s{cfg, std::vector<cdouble>(state_dimension(cfg), 0.0)};
    BosonBasis basis(2 * n, cfg.boson_truncation);
    std::vector<std::uint8_t> occ(2 * n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        occ[mode_index(x, minus)] = 1;
        s.amplitudes[basis.index_of(occ)] =
            std::polar(1.0 / std::sqrt(double(n)), -k * double(x));
        occ[mode_index(x, minus)] = 0;
    }
    return s;
}

}  // namespace qcalab
