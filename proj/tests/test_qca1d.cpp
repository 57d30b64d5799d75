#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qcalab/eig.hpp"
#include "qcalab/errors.hpp"
#include "qcalab/qca1d.hpp"

using namespace qcalab;
using testing::max_abs_diff;

namespace {

// Independent oracle: the two-component walk built directly on mode space
// (coin after shift), never touching the many-body machinery.
ComplexMatrix direct_walk_matrix(std::size_t n, double theta) {
    const std::size_t d = 2 * n;
    ComplexMatrix shift = ComplexMatrix::zero(d, d);
    for (std::size_t x = 0; x < n; ++x) {
        shift(mode_index((x + 1) % n, true), mode_index(x, false)) = 1.0;  // (x,+) -> (x+1,-)
        shift(mode_index(x, false), mode_index((x + 1) % n, true)) = 1.0;  // (x+1,-) -> (x,+)
    }
    ComplexMatrix coin = ComplexMatrix::zero(d, d);
    const double c = std::cos(theta), s = std::sin(theta);
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t p = mode_index(x, false), m = mode_index(x, true);
        coin(p, m) = c;   // (x,-) -> cos (x,+)
        coin(m, m) = s;   // ... + sin (x,-)
        coin(m, p) = c;   // (x,+) -> cos (x,-)
        coin(p, p) = -s;  // ... - sin (x,+)
    }
    return coin * shift;
}

LatticeState1D random_state(const Lattice1DConfig& cfg, std::mt19937& rng) {
    LatticeState1D s{cfg, std::vector<cdouble>(state_dimension(cfg))};
    std::normal_distribution<double> dist;
    double norm = 0.0;
    for (auto& a : s.amplitudes) {
        a = cdouble(dist(rng), dist(rng));
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : s.amplitudes) a /= norm;
    return s;
}

}  // namespace

TEST_CASE("coin gate matches its defining table") {
    const double th = 0.31;
    const ComplexMatrix c = coin_gate(th);
    CHECK(c(0, 0) == cdouble(1.0));
    CHECK(c(1, 1).real() == doctest::Approx(std::sin(th)));
    CHECK(c(2, 1).real() == doctest::Approx(std::cos(th)));
    CHECK(c(1, 2).real() == doctest::Approx(std::cos(th)));
    CHECK(c(2, 2).real() == doctest::Approx(-std::sin(th)));
    CHECK(c(3, 3) == cdouble(-1.0));
    CHECK(c.unitarity_defect() < 1e-15);

    const ComplexMatrix c0 = coin_gate(0.0);
    CHECK(c0(2, 1) == cdouble(1.0));
    CHECK(c0(1, 2) == cdouble(1.0));
    const ComplexMatrix cq = coin_gate(M_PI / 2);
    CHECK(cq(1, 1).real() == doctest::Approx(1.0));
    CHECK(cq(2, 2).real() == doctest::Approx(-1.0));
    CHECK(std::abs(cq(2, 1)) < 1e-16);
}

TEST_CASE("shift gate swaps and flags the crossing") {
    const ComplexMatrix s = shift_gate();
    CHECK(s(2, 1) == cdouble(1.0));   // |01> -> |10>
    CHECK(s(1, 2) == cdouble(1.0));
    CHECK(s(3, 3) == cdouble(-1.0));  // two particles crossing
    CHECK(max_abs_diff(s * s, ComplexMatrix::identity(4)) < 1e-15);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(validate_config({3, LatticeSpecies::Fermion, 0.0, 0}), ValidationError);
    CHECK_THROWS_AS(validate_config({4, LatticeSpecies::Boson, 0.2, 1}),
                    ThetaNonzeroForBosonError);
    CHECK_THROWS_AS(state_dimension({10, LatticeSpecies::Fermion, 0.0, 0}),
                    DimensionTooLargeError);
}

TEST_CASE("boson basis enumerates number states with bounded total") {
    const BosonBasis b(4, 2);
    CHECK(b.dim() == 15);  // 1 + 4 + 10
    CHECK(b.state(0) == std::vector<std::uint8_t>({0, 0, 0, 0}));
    for (std::size_t i = 0; i < b.dim(); ++i) CHECK(b.index_of(b.state(i)) == i);
    CHECK_THROWS_AS(b.index_of({3, 0, 0, 0}), ValidationError);
}

TEST_CASE("vacuum is a fixed point of the free evolution") {
    for (auto cfg : {Lattice1DConfig{4, LatticeSpecies::Fermion, 0.4, 0},
                     Lattice1DConfig{4, LatticeSpecies::Boson, 0.0, 2}}) {
        const Evolution1D ev(cfg);
        LatticeState1D v = vacuum_state(cfg);
        ev.apply(v.amplitudes);
        CHECK(std::abs(v.amplitudes[0] - cdouble(1.0)) < 1e-15);
        double rest = 0.0;
        for (std::size_t i = 1; i < v.amplitudes.size(); ++i) rest += std::norm(v.amplitudes[i]);
        CHECK(rest < 1e-28);
    }
}

TEST_CASE("free evolution preserves the norm on random states") {
    std::mt19937 rng(404);
    for (auto cfg : {Lattice1DConfig{4, LatticeSpecies::Fermion, 0.7, 0},
                     Lattice1DConfig{2, LatticeSpecies::Boson, 0.0, 3}}) {
        const Evolution1D ev(cfg);
        for (int rep = 0; rep < 5; ++rep) {
            LatticeState1D s = random_state(cfg, rng);
            ev.apply(s.amplitudes);
            CHECK(std::abs(state_norm(s) - 1.0) < 1e-12);
            ev.apply_dagger(s.amplitudes);
            ev.apply_tau(s.amplitudes, false);
            ev.apply_tau(s.amplitudes, true);
            CHECK(std::abs(state_norm(s) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("dense evolution matrix is unitary and applies like the gates") {
    const Lattice1DConfig cfg{4, LatticeSpecies::Fermion, 0.3, 0};
    const Evolution1D ev(cfg);
    const ComplexMatrix u = ev.to_matrix();
    CHECK(u.unitarity_defect() < 1e-12);
    std::mt19937 rng(405);
    LatticeState1D s = random_state(cfg, rng);
    auto direct = u.apply(s.amplitudes);
    ev.apply(s.amplitudes);
    double diff = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i) diff += std::norm(direct[i] - s.amplitudes[i]);
    CHECK(std::sqrt(diff) < 1e-13);
}

TEST_CASE("two steps at theta=0 translate a single excitation by one site") {
    const Lattice1DConfig cfg{2, LatticeSpecies::Fermion, 0.0, 0};
    const Evolution1D ev(cfg);
    // + excitations move right one site per step; on two sites, two steps
    // return every single-particle state to itself
    for (std::size_t m = 0; m < 4; ++m) {
        LatticeState1D s = single_excitation_state(cfg, m / 2, m % 2);
        ev.apply(s.amplitudes);
        ev.apply(s.amplitudes);
        CHECK(std::abs(s.amplitudes[std::size_t(1) << m] - cdouble(1.0)) < 1e-14);
    }
}

TEST_CASE("single-particle block matches the directly built walk") {
    for (std::size_t n : {4u, 8u}) {
        for (double th : {0.0, 0.3}) {
            const Lattice1DConfig cfg{n, LatticeSpecies::Fermion, th, 0};
            const ComplexMatrix blk = single_particle_block(cfg);
            CHECK(blk.unitarity_defect() < 1e-12);
            CHECK(max_abs_diff(blk, direct_walk_matrix(n, th)) <= 1e-12);
        }
    }
}

TEST_CASE("single-particle eigenphases at theta=0 are the lattice momenta") {
    const Lattice1DConfig cfg{8, LatticeSpecies::Fermion, 0.0, 0};
    auto p = unitary_phases(eig_unitary(single_particle_block(cfg)));
    std::sort(p.begin(), p.end());
    // e^{±ik}, k = 2 pi m / 8: each nonedge phase twice
    std::vector<double> want;
    for (int m = -3; m <= 4; ++m) want.push_back(2.0 * M_PI * m / 8.0);
    for (int m = -3; m <= 3; ++m) want.push_back(2.0 * M_PI * m / 8.0);
    want.push_back(M_PI);
    std::sort(want.begin(), want.end());
    REQUIRE(p.size() == want.size());
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i] - want[i]) < 1e-12);
}

TEST_CASE("single-particle spectrum is negation symmetric at nonzero mass") {
    const Lattice1DConfig cfg{8, LatticeSpecies::Fermion, 0.3, 0};
    auto p = unitary_phases(eig_unitary(single_particle_block(cfg)));
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < p.size(); ++i)
        CHECK(std::abs(p[i] + p[p.size() - 1 - i]) < 1e-12);
}

TEST_CASE("boson single-particle block is minus the fermion one at theta=0") {
    const Lattice1DConfig cfg_f{2, LatticeSpecies::Fermion, 0.0, 0};
    const Lattice1DConfig cfg_b{2, LatticeSpecies::Boson, 0.0, 1};
    const ComplexMatrix bf = single_particle_block(cfg_f);
    const ComplexMatrix bb = single_particle_block(cfg_b);
    CHECK(max_abs_diff(bb, cdouble(-1.0) * bf) < 1e-13);
}

TEST_CASE("plus-mode sign flip acts as advertised") {
    const Lattice1DConfig cfg{2, LatticeSpecies::Boson, 0.0, 2};
    const Evolution1D ev(cfg);
    const BosonBasis& basis = *ev.boson_basis();
    std::vector<cdouble> v(basis.dim(), 1.0);
    ev.apply_plus_mode_sign(v);
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const auto& occ = basis.state(i);
        const int plus_total = occ[0] + occ[2];
        CHECK(v[i] == cdouble(plus_total % 2 ? -1.0 : 1.0));
    }
}

TEST_CASE("time reversal defect vanishes for both species") {
    CHECK(time_reversal_defect({4, LatticeSpecies::Fermion, 0.2, 0}) <= 1e-12);
    CHECK(time_reversal_defect({2, LatticeSpecies::Boson, 0.0, 2}) <= 1e-12);
}

TEST_CASE("interaction with zero couplings is the identity") {
    const Lattice1DConfig cf{2, LatticeSpecies::Fermion, 0.0, 0};
    const Lattice1DConfig cb{2, LatticeSpecies::Boson, 0.0, 1};
    const InteractionUnitary ui(cf, cb, InteractionCoeffs{});
    CHECK(max_abs_diff(ui.to_matrix(), ComplexMatrix::identity(ui.dim())) < 1e-14);
}

TEST_CASE("interaction generator is hermitian and number conserving") {
    std::mt19937 rng(911);
    std::normal_distribution<double> dist;
    const Lattice1DConfig cf{2, LatticeSpecies::Fermion, 0.0, 0};
    const Lattice1DConfig cb{2, LatticeSpecies::Boson, 0.0, 2};
    InteractionCoeffs coeffs;
    for (auto& a : coeffs.alpha) a = 0.1 * cdouble(dist(rng), dist(rng));
    const ComplexMatrix h = interaction_hamiltonian(cf, cb, coeffs);
    CHECK(h.hermiticity_defect() <= 1e-13);

    const InteractionUnitary ui(cf, cb, coeffs);
    const ComplexMatrix u = ui.to_matrix();
    CHECK(u.unitarity_defect() < 1e-12);
    // [U, N_f] = 0: N_f diagonal with the fermion occupation
    const std::size_t dim_b = ui.dim_boson();
    double worst = 0.0;
    for (std::size_t i = 0; i < ui.dim(); ++i)
        for (std::size_t j = 0; j < ui.dim(); ++j) {
            const int ni = __builtin_popcountll(i / dim_b);
            const int nj = __builtin_popcountll(j / dim_b);
            worst = std::max(worst, std::abs(u(i, j) * double(nj - ni)));
        }
    CHECK(worst <= 1e-12);
}

TEST_CASE("interaction matches a brute-force dense exponential") {
    std::mt19937 rng(913);
    std::normal_distribution<double> dist;
    const Lattice1DConfig cf{2, LatticeSpecies::Fermion, 0.0, 0};
    const Lattice1DConfig cb{2, LatticeSpecies::Boson, 0.0, 1};
    InteractionCoeffs coeffs;
    for (auto& a : coeffs.alpha) a = 0.2 * cdouble(dist(rng), dist(rng));
    const ComplexMatrix h = interaction_hamiltonian(cf, cb, coeffs);
    const ComplexMatrix u_direct = exp_i_generator(h, -1.0);  // exp(-iH) via full spectrum
    const InteractionUnitary ui(cf, cb, coeffs);
    CHECK(max_abs_diff(ui.to_matrix(), u_direct) < 1e-12);

    // apply() agrees with the dense matrix
    std::vector<cdouble> v(ui.dim());
    for (auto& a : v) a = cdouble(dist(rng), dist(rng));
    auto direct = u_direct.apply(v);
    ui.apply(v);
    double diff = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) diff += std::norm(v[i] - direct[i]);
    CHECK(std::sqrt(diff) < 1e-12);
}

TEST_CASE("finite-range profile reaches the offset sites") {
    const Lattice1DConfig cf{4, LatticeSpecies::Fermion, 0.0, 0};
    const Lattice1DConfig cb{4, LatticeSpecies::Boson, 0.0, 1};
    InteractionCoeffs coeffs;
    coeffs.alpha[alpha_slot(false, false, false)] = 0.05;
    coeffs.range = 2;
    coeffs.profile = {0.3, 1.0, 0.3};
    CHECK_NOTHROW(InteractionUnitary(cf, cb, coeffs));
    InteractionCoeffs bad = coeffs;
    bad.profile = {1.0};
    CHECK_THROWS_AS(InteractionUnitary(cf, cb, bad), ValidationError);
    bad = coeffs;
    bad.range = 1;
    CHECK_THROWS_AS(InteractionUnitary(cf, cb, bad), ValidationError);
}

TEST_CASE("translation commutators: free, interacting, and broken") {
    const Lattice1DConfig cf{4, LatticeSpecies::Fermion, 0.3, 0};
    const Lattice1DConfig cb{4, LatticeSpecies::Boson, 0.0, 1};
    const Evolution1D ef(cf);
    const Evolution1D eb(cb);

    // free fermion evolution lifted to the joint space
    const ComplexMatrix uf = ef.to_matrix();
    const ComplexMatrix ub = eb.to_matrix();
    const ComplexMatrix w = kron(uf, ub);
    CHECK(translation_commutator(w, cf, cb) <= 1e-12);

    InteractionCoeffs coeffs;
    for (std::size_t s = 0; s < 8; ++s) coeffs.alpha[s] = 0.08;
    const InteractionUnitary ui(cf, cb, coeffs);
    const ComplexMatrix u_full = ui.multiply_dense(w);
    CHECK(translation_commutator(u_full, cf, cb) <= 1e-10);

    InteractionCoeffs broken = coeffs;
    broken.site_scale = {1.0, 2.0, 1.0, 1.0};
    const InteractionUnitary ui2(cf, cb, broken);
    CHECK(translation_commutator(ui2.multiply_dense(w), cf, cb) > 1e-6);
}

TEST_CASE("mode populations: vacuum, single site excitation, free evolution") {
    const Lattice1DConfig cb{4, LatticeSpecies::Boson, 0.0, 2};

    const ModePopulations vac = negative_mode_population(vacuum_state(cb));
    CHECK(vac.total_positive() == doctest::Approx(0.0));
    CHECK(vac.total_negative() == doctest::Approx(0.0));

    // a single site excitation splits evenly over all momenta of its branch
    const ModePopulations one =
        negative_mode_population(single_excitation_state(cb, 1, false));
    CHECK(one.total_positive() + one.total_negative() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < one.k.size(); ++i)
        CHECK(one.positive[i] + one.negative[i] == doctest::Approx(0.25).epsilon(1e-12));

    // positive-energy initial data stays positive under free evolution
    const Evolution1D ev(cb);
    LatticeState1D s = momentum_excitation_state(cb, 1, false);  // (k>0, +): positive energy
    CHECK(negative_mode_population(s).total_negative() < 1e-12);
    for (int step = 0; step < 5; ++step) {
        ev.apply(s.amplitudes);
        CHECK(negative_mode_population(s).total_negative() < 1e-12);
        CHECK(negative_mode_population(s).total_positive() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("momentum eigenmodes pick up the advertised phase per step") {
    const Lattice1DConfig cb{4, LatticeSpecies::Boson, 0.0, 1};
    const Evolution1D ev(cb);
    for (long l : {1L, 2L, -1L}) {
        for (bool minus : {false, true}) {
            LatticeState1D s = momentum_excitation_state(cb, l, minus);
            LatticeState1D t = s;
            ev.apply(t.amplitudes);
            // expected eigenvalue: -e^{+ik} on the + branch, -e^{-ik} on -
            const double k = 2.0 * M_PI * double(l) / 4.0;
            const cdouble lam = -std::polar(1.0, minus ? -k : k);
            double diff = 0.0;
            for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
                diff += std::norm(t.amplitudes[i] - lam * s.amplitudes[i]);
            CHECK(std::sqrt(diff) < 1e-12);
        }
    }
}

TEST_CASE("two crossing particles pick up the exchange sign") {
    const Lattice1DConfig cfg{4, LatticeSpecies::Fermion, 0.0, 0};
    const Evolution1D ev(cfg);
    // right-mover at (0,+), left-mover at (2,-): they cross at site 1
    std::vector<cdouble> v(state_dimension(cfg), 0.0);
    const std::size_t start = (std::size_t(1) << mode_index(0, false)) |
                              (std::size_t(1) << mode_index(2, true));
    v[start] = 1.0;
    ev.apply(v);
    ev.apply(v);
    // single-particle transport alone sends (0,+)->(2,+), (2,-)->(0,-) with
    // amplitude +1 each; the crossing flips the joint sign
    const std::size_t end = (std::size_t(1) << mode_index(2, false)) |
                            (std::size_t(1) << mode_index(0, true));
    CHECK(std::abs(v[end] - cdouble(-1.0)) < 1e-13);
}

TEST_CASE("state records round trip") {
    std::mt19937 rng(917);
    for (auto cfg : {Lattice1DConfig{2, LatticeSpecies::Fermion, 0.0, 0},
                     Lattice1DConfig{2, LatticeSpecies::Boson, 0.0, 2}}) {
        const LatticeState1D s = random_state(cfg, rng);
        const auto recs = export_records(s);
        const LatticeState1D t = state_from_records(cfg, recs);
        double diff = 0.0;
        for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
            diff += std::norm(s.amplitudes[i] - t.amplitudes[i]);
        CHECK(std::sqrt(diff) < 1e-12);
    }
}
