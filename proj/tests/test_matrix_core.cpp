#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qcalab/eig.hpp"
#include "qcalab/errors.hpp"
#include "qcalab/internal_space.hpp"

using namespace qcalab;
using testing::max_abs_diff;
using testing::random_hermitian;
using testing::random_matrix;

TEST_CASE("kron of identities is the identity") {
    CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                       ComplexMatrix::identity(6)) == 0.0);
}

TEST_CASE("kron(sigma_z, J_x) is block-diag(J_x, -J_x)") {
    const ComplexMatrix sz = {{1.0, 0.0}, {0.0, -1.0}};
    const auto j = spin1_generators();
    const ComplexMatrix doubled = kron(sz, j[0]);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            CHECK(doubled(r, c) == j[0](r, c));
            CHECK(doubled(r + 3, c + 3) == -j[0](r, c));
            CHECK(doubled(r, c + 3) == cdouble(0.0));
            CHECK(doubled(r + 3, c) == cdouble(0.0));
        }
}

TEST_CASE("kron matches the four-index elementwise oracle") {
    std::mt19937 rng(42);
    const ComplexMatrix a = random_matrix(rng, 2, 2);
    const ComplexMatrix b = random_matrix(rng, 2, 2);
    const ComplexMatrix k = kron(a, b);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t q = 0; q < 2; ++q)
                    CHECK(std::abs(k(2 * i + p, 2 * j + q) - a(i, j) * b(p, q)) == 0.0);
}

TEST_CASE("kron is associative and bilinear") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 5; ++rep) {
        const ComplexMatrix a = random_matrix(rng, 2, 3);
        const ComplexMatrix b = random_matrix(rng, 3, 2);
        const ComplexMatrix c = random_matrix(rng, 2, 2);
        CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-13);
        const cdouble s(0.7, -0.3);
        CHECK(max_abs_diff(kron(s * a, b), s * kron(a, b)) < 1e-13);
        const ComplexMatrix a2 = random_matrix(rng, 2, 3);
        CHECK(max_abs_diff(kron(a + a2, b), kron(a, b) + kron(a2, b)) < 1e-13);
    }
}

TEST_CASE("hermitian eigenvalues of a diagonal matrix come out ascending") {
    const ComplexMatrix d = ComplexMatrix::diagonal({3.0, 1.0, 2.0});
    const auto e = eig_hermitian(d);
    CHECK(e.values[0].real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.values[1].real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e.values[2].real() == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("k.J along x has eigenvalues {-k, 0, +k}") {
    // characteristic polynomial of k J_x is -t(t^2 - k^2)
    const auto j = spin1_generators();
    const ComplexMatrix m = 0.3 * j[0];
    const auto e = eig_hermitian(m);
    CHECK(e.values[0].real() == doctest::Approx(-0.3).epsilon(1e-13));
    CHECK(std::abs(e.values[1].real()) < 1e-13);
    CHECK(e.values[2].real() == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("random hermitian reconstructs from its eigensystem") {
    std::mt19937 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix h = random_hermitian(rng, 4);
        const auto e = eig_hermitian(h);
        ComplexMatrix lam = ComplexMatrix::zero(4, 4);
        for (std::size_t i = 0; i < 4; ++i) lam(i, i) = e.values[i];
        const ComplexMatrix back = e.vectors * lam * e.vectors.dagger();
        CHECK((back - h).frobenius_norm() <= 1e-11 * std::max(1.0, h.frobenius_norm()));
        CHECK(e.vectors.unitarity_defect() < 1e-12);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(e.values[i].imag()) < 1e-12);
    }
}

TEST_CASE("hermitian residual bound holds per eigenpair") {
    std::mt19937 rng(11);
    const ComplexMatrix h = random_hermitian(rng, 6);
    const auto e = eig_hermitian(h);
    for (std::size_t c = 0; c < 6; ++c) {
        std::vector<cdouble> v(6);
        for (std::size_t r = 0; r < 6; ++r) v[r] = e.vectors(r, c);
        const auto hv = h.apply(v);
        double acc = 0.0;
        for (std::size_t r = 0; r < 6; ++r) acc += std::norm(hv[r] - e.values[c] * v[r]);
        CHECK(std::sqrt(acc) <= 1e-11 * h.frobenius_norm());
    }
}

TEST_CASE("eig_hermitian rejects a non-hermitian input") {
    ComplexMatrix m = {{0.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(eig_hermitian(m), NotHermitianError);
}

TEST_CASE("unitary phases of the identity vanish") {
    const auto e = eig_unitary(ComplexMatrix::identity(4));
    for (double p : unitary_phases(e)) CHECK(std::abs(p) < 1e-14);
}

TEST_CASE("unitary phases of diag(i, -i)") {
    const auto e = eig_unitary(ComplexMatrix::diagonal({cdouble(0.0, 1.0), cdouble(0.0, -1.0)}));
    const auto p = unitary_phases(e);
    CHECK(p[0] == doctest::Approx(-M_PI / 2).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(M_PI / 2).epsilon(1e-14));
}

TEST_CASE("phases of exp(-i 0.1 gamma0) are ±0.1 twice") {
    const auto g = dirac_gammas();
    const ComplexMatrix u = exp_i_generator(g[0], -0.1);
    const auto p = unitary_phases(eig_unitary(u));
    CHECK(p[0] == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(p[3] == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("eig_unitary reproduces the input and keeps moduli on the circle") {
    std::mt19937 rng(5);
    const ComplexMatrix u = exp_i_generator(random_hermitian(rng, 5), 1.0);
    const auto e = eig_unitary(u);
    for (const auto& lam : e.values) CHECK(std::abs(std::abs(lam) - 1.0) < 1e-12);
    ComplexMatrix lam = ComplexMatrix::zero(5, 5);
    for (std::size_t i = 0; i < 5; ++i) lam(i, i) = e.values[i];
    CHECK((e.vectors * lam * e.vectors.dagger() - u).frobenius_norm() < 1e-11);
}

TEST_CASE("eig_unitary splits degenerate cosine pairs (phi and -phi)") {
    // diag(e^{i a}, e^{-i a}) has equal cosines; the sine operator must split it
    const double a = 0.7;
    const ComplexMatrix u =
        ComplexMatrix::diagonal({std::polar(1.0, a), std::polar(1.0, -a)});
    const auto p = unitary_phases(eig_unitary(u));
    CHECK(p[0] == doctest::Approx(-a).epsilon(1e-13));
    CHECK(p[1] == doctest::Approx(a).epsilon(1e-13));
}

TEST_CASE("eig_unitary rejects a non-unitary input") {
    ComplexMatrix m = {{2.0, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(eig_unitary(m), NotUnitaryError);
}

TEST_CASE("phases of U and U dagger are negatives as multisets") {
    std::mt19937 rng(9);
    for (int rep = 0; rep < 5; ++rep) {
        const ComplexMatrix u = exp_i_generator(random_hermitian(rng, 4), 0.8);
        auto p = unitary_phases(eig_unitary(u));
        auto q = unitary_phases(eig_unitary(u.dagger()));
        std::sort(p.begin(), p.end());
        std::sort(q.begin(), q.end());
        for (std::size_t i = 0; i < p.size(); ++i)
            CHECK(std::abs(p[i] + q[p.size() - 1 - i]) < 1e-12);
    }
}

TEST_CASE("exp_i_generator at scale zero is the identity") {
    std::mt19937 rng(13);
    const ComplexMatrix g = random_hermitian(rng, 4);
    CHECK(max_abs_diff(exp_i_generator(g, 0.0), ComplexMatrix::identity(4)) < 1e-15);
}

TEST_CASE("exp(i theta gamma0 gamma1) matches the truncated series") {
    const auto g = dirac_gammas();
    const ComplexMatrix gen = g[0] * g[1];
    const double theta = 0.37;
    // independent oracle: 20-term Taylor series of exp(i theta gen)
    ComplexMatrix series = ComplexMatrix::identity(4);
    ComplexMatrix term = ComplexMatrix::identity(4);
    for (int k = 1; k <= 20; ++k) {
        term = term * gen;
        term *= cdouble(0.0, theta / double(k));
        series += term;
    }
    const ComplexMatrix u = exp_i_generator(gen, theta);
    CHECK(max_abs_diff(u, series) < 1e-13);
    // (gamma0 gamma1)^2 = 1, so the closed form is cos + i sin
    const ComplexMatrix closed =
        std::cos(theta) * ComplexMatrix::identity(4) + cdouble(0.0, std::sin(theta)) * gen;
    CHECK(max_abs_diff(u, closed) < 1e-13);
    CHECK(u.unitarity_defect() < 1e-12);
}

TEST_CASE("exp(-i a J_x) rotates real vectors about x") {
    const auto j = spin1_generators();
    const double a = 0.9;
    const ComplexMatrix u = exp_i_generator(j[0], -a);
    const ComplexMatrix rot = {{1.0, 0.0, 0.0},
                               {0.0, std::cos(a), -std::sin(a)},
                               {0.0, std::sin(a), std::cos(a)}};
    CHECK(max_abs_diff(u, rot) < 1e-13);
}

TEST_CASE("generator exponentials compose additively") {
    std::mt19937 rng(17);
    const ComplexMatrix g = random_hermitian(rng, 4);
    const ComplexMatrix lhs = exp_i_generator(g, 0.4) * exp_i_generator(g, 0.9);
    CHECK(max_abs_diff(lhs, exp_i_generator(g, 1.3)) < 1e-12);
}

TEST_CASE("large hermitian path agrees with the small one") {
    // same matrix through the Jacobi branch and the dense-solver branch
    std::mt19937 rng(23);
    const std::size_t n = 48;
    ComplexMatrix h = random_hermitian(rng, n);
    const auto small = eig_hermitian(h);
    ComplexMatrix big(n + 80, n + 80);  // embed in a larger block to force the dense branch
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) big(i, j) = h(i, j);
    for (std::size_t i = n; i < n + 80; ++i) big(i, i) = 100.0 + double(i);
    const auto large = eig_hermitian(big);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(large.values[i].real() == doctest::Approx(small.values[i].real()).epsilon(1e-10));
}
