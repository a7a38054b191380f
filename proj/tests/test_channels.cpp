#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ucl/channels.hpp"
#include "ucl/eig.hpp"
#include "ucl/symgroup.hpp"

using namespace ucl;

namespace {

ComplexMatrix pauli_x() {
    ComplexMatrix x(2, 2);
    x(0, 1) = x(1, 0) = cplx(1.0, 0.0);
    return x;
}

ComplexMatrix random_square(std::size_t n, RngStream& rng) {
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            m(r, c) = cplx(rng.gaussian(), rng.gaussian());
        }
    }
    return m;
}

double operator_norm(const ComplexMatrix& h) {
    double best = 0.0;
    for (double w : herm_eigenvalues(h)) {
        best = std::max(best, std::abs(w));
    }
    return best;
}

}  // namespace

TEST_CASE("rng streams are reproducible and separated") {
    RngStream a(123, 5);
    RngStream b(123, 5);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    RngStream c(123, 6);
    bool any_diff = false;
    RngStream a2(123, 5);
    for (int i = 0; i < 10; ++i) {
        any_diff |= (a2.next_u64() != c.next_u64());
    }
    CHECK(any_diff);
}

TEST_CASE("maximally entangled vectors") {
    const ComplexMatrix v = max_entangled(2, 1);
    REQUIRE(v.rows() == 4);
    CHECK(v(0, 0) == cplx(1.0, 0.0));
    CHECK(v(1, 0) == cplx(0.0, 0.0));
    CHECK(v(2, 0) == cplx(0.0, 0.0));
    CHECK(v(3, 0) == cplx(1.0, 0.0));

    const ComplexMatrix v3 = max_entangled(2, 3);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < v3.rows(); ++i) norm2 += std::norm(v3(i, 0));
    CHECK(norm2 == doctest::Approx(8.0));

    const ComplexMatrix w = max_entangled(3, 1);
    double norm2_w = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i) norm2_w += std::norm(w(i, 0));
    CHECK(norm2_w == doctest::Approx(3.0));
}

TEST_CASE("choi operator basics") {
    const LabeledOperator c = choi(ComplexMatrix::identity(2));
    CHECK(c.mat.trace().real() == doctest::Approx(2.0));
    const auto vals = herm_eigenvalues(c.mat);
    CHECK(vals[0] == doctest::Approx(2.0));
    CHECK(std::abs(vals[1]) < 1e-12);

    const LabeledOperator cx = choi(pauli_x());
    const ComplexMatrix reduced = partial_trace(cx.mat, cx.space, {{FactorKind::H, 1}});
    CHECK(max_abs_diff(reduced, ComplexMatrix::identity(2)) < 1e-12);

    // Global phase drops out.
    const cplx phase = std::exp(cplx(0.0, 0.7));
    const LabeledOperator cp = choi(phase * ComplexMatrix::identity(2));
    CHECK(max_abs_diff(cp.mat, c.mat) < 1e-12);

    ComplexMatrix not_unitary(2, 2);
    not_unitary(0, 0) = cplx(2.0, 0.0);
    not_unitary(1, 1) = cplx(1.0, 0.0);
    CHECK_THROWS_AS(choi(not_unitary), std::invalid_argument);
}

TEST_CASE("haar samples are unitary and deterministic") {
    RngStream rng(9, 0);
    for (int i = 0; i < 100; ++i) {
        const ComplexMatrix u = haar_unitary(3, rng);
        CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(3)) < 1e-12);
    }
    RngStream r1(77, 3), r2(77, 3);
    CHECK(max_abs_diff(haar_unitary(2, r1), haar_unitary(2, r2)) == 0.0);
}

TEST_CASE("haar character moment: mean |Tr U|^2 is 1") {
    RngStream rng(11, 0);
    double acc = 0.0;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
        acc += std::norm(haar_unitary(2, rng).trace());
    }
    CHECK(acc / samples == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("permutation gram matrix for two slots") {
    const ComplexMatrix g = permutation_gram(2, 2);
    REQUIRE(g.rows() == 2);
    CHECK(g(0, 0).real() == doctest::Approx(4.0));
    CHECK(g(0, 1).real() == doctest::Approx(2.0));
    CHECK(g(1, 0).real() == doctest::Approx(2.0));
    CHECK(g(1, 1).real() == doctest::Approx(4.0));
}

TEST_CASE("twirl of the one-slot entangled projector is maximally mixed on H") {
    const LabeledOperator out = twirl(m1(1, 2), 1, 2);
    ComplexMatrix expected = ComplexMatrix::identity(4);
    expected *= cplx(0.5, 0.0);
    CHECK(max_abs_diff(out.mat, expected) < 1e-12);
}

TEST_CASE("twirl is an idempotent trace-preserving projection") {
    RngStream rng(12, 0);
    ComplexMatrix x = random_square(16, rng);
    x = x + x.adjoint();
    const LabeledOperator lx{x, FactorSpace::interleaved(2, 2)};
    const LabeledOperator once = twirl(lx, 2, 2);
    const LabeledOperator twice = twirl(once, 2, 2);
    CHECK(max_abs_diff(once.mat, twice.mat) < 1e-10);
    CHECK(std::abs(once.mat.trace() - x.trace()) < 1e-12);
}

TEST_CASE("twirl output commutes with collective unitaries") {
    const LabeledOperator out = m2(2, 2);
    const FactorSpace grouped = FactorSpace::grouped(2, 2);
    const ComplexMatrix g = permute_factors(out.mat, out.space, interleaved_to_grouped_perm(2));
    RngStream rng(13, 0);
    for (int i = 0; i < 20; ++i) {
        const ComplexMatrix v = haar_unitary(2, rng);
        const ComplexMatrix op = kron(ComplexMatrix::identity(4), kron(v, v));
        CHECK(max_abs_diff(g * op, op * g) < 1e-9);
    }
}

TEST_CASE("m1 structure and chain identity") {
    const auto vals = herm_eigenvalues(m1(1, 2).mat);
    CHECK(vals[0] == doctest::Approx(2.0));
    for (std::size_t i = 1; i < vals.size(); ++i) {
        CHECK(std::abs(vals[i]) < 1e-12);
    }
    CHECK(m1(3, 2).mat.trace().real() == doctest::Approx(8.0));

    for (int k = 2; k <= 3; ++k) {
        const LabeledOperator mk = m1(k, 2);
        const ComplexMatrix traced = partial_trace(mk.mat, mk.space, {{FactorKind::H, k}});
        const ComplexMatrix expected = kron(m1(k - 1, 2).mat, ComplexMatrix::identity(2));
        CHECK(max_abs_diff(traced, expected) < 1e-12);
    }
}

TEST_CASE("m2 structure, inner product, and chain identity") {
    const LabeledOperator m = m2(2, 2);
    CHECK(m.mat.trace().real() == doctest::Approx(4.0));
    CHECK(min_eigenvalue(m.mat) > -1e-12);

    const ComplexMatrix phi = max_entangled(2, 2);
    cplx braket(0.0, 0.0);
    for (std::size_t r = 0; r < phi.rows(); ++r) {
        for (std::size_t c = 0; c < phi.rows(); ++c) {
            braket += std::conj(phi(r, 0)) * m.mat(r, c) * phi(c, 0);
        }
    }
    CHECK(braket.real() == doctest::Approx(2.0));  // sum of squared symmetric-group dims

    for (int k = 2; k <= 3; ++k) {
        const LabeledOperator mk = m2(k, 2);
        const ComplexMatrix traced = partial_trace(mk.mat, mk.space, {{FactorKind::H, k}});
        const ComplexMatrix expected = kron(m2(k - 1, 2).mat, ComplexMatrix::identity(2));
        CHECK(max_abs_diff(traced, expected) < 1e-10);
    }

    const LabeledOperator m23 = m2(2, 3);
    const ComplexMatrix traced3 = partial_trace(m23.mat, m23.space, {{FactorKind::H, 2}});
    CHECK(max_abs_diff(traced3, kron(m2(1, 3).mat, ComplexMatrix::identity(3))) < 1e-10);
}

TEST_CASE("m2 dominates m1/gamma and the bound is tight") {
    for (auto [d, n] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 1}}) {
        const double gamma = static_cast<double>(gamma_factor(n, d));
        ComplexMatrix gap = m2(n, d).mat;
        ComplexMatrix scaled = m1(n, d).mat;
        scaled *= cplx(1.0 / gamma, 0.0);
        gap -= scaled;
        const double lo = min_eigenvalue(gap);
        CHECK(lo > -1e-10);
    }
    // Tightness at one slot: the gap has a zero eigenvalue.
    ComplexMatrix gap = m2(1, 2).mat;
    ComplexMatrix scaled = m1(1, 2).mat;
    scaled *= cplx(0.25, 0.0);
    gap -= scaled;
    CHECK(std::abs(min_eigenvalue(gap)) < 1e-10);
}

TEST_CASE("monte carlo haar average matches the exact twirl") {
    for (int n : {1, 2}) {
        RngStream rng(21, static_cast<std::uint64_t>(n));
        const std::size_t dim = m1(n, 2).mat.rows();
        ComplexMatrix acc(dim, dim);
        const int samples = 10000;
        for (int s = 0; s < samples; ++s) {
            const ComplexMatrix v = haar_unitary(2, rng);
            const LabeledOperator sample = input_choi(v, v, n, 0);
            acc += sample.mat;
        }
        acc *= cplx(1.0 / samples, 0.0);
        CHECK(max_abs_diff(acc, m2(n, 2).mat) < 5.0 / std::sqrt(static_cast<double>(samples)));
    }
}

TEST_CASE("input choi operator") {
    const LabeledOperator both = input_choi(ComplexMatrix::identity(2),
                                            ComplexMatrix::identity(2), 1, 1);
    CHECK(max_abs_diff(both.mat, m1(2, 2).mat) < 1e-15);
    CHECK(both.mat.trace().real() == doctest::Approx(4.0));

    RngStream rng(22, 0);
    const LabeledOperator mixed =
        input_choi(haar_unitary(2, rng), haar_unitary(2, rng), 1, 2);
    CHECK(mixed.mat.trace().real() == doctest::Approx(8.0));
    CHECK(mixed.space.count() == 6);

    CHECK_THROWS_AS(input_choi(ComplexMatrix::identity(2), ComplexMatrix::identity(3), 1, 1),
                    std::invalid_argument);
}

TEST_CASE("case-1 haar average of the joint input converges to m2") {
    RngStream rng(23, 0);
    const int samples = 10000;
    ComplexMatrix acc(16, 16);
    for (int s = 0; s < samples; ++s) {
        const ComplexMatrix u = haar_unitary(2, rng);
        acc += input_choi(u, u, 1, 1).mat;
    }
    acc *= cplx(1.0 / samples, 0.0);
    ComplexMatrix diff = acc - m2(2, 2).mat;
    CHECK(operator_norm(diff) < 5.0 / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("averaged copy states") {
    const LabeledOperator r1 = rho1(1, 1, 2);
    ComplexMatrix expected = sym_projector(2, 2);
    expected *= cplx(1.0 / 3.0, 0.0);
    CHECK(max_abs_diff(r1.mat, expected) < 1e-12);
    CHECK(r1.mat.trace().real() == doctest::Approx(1.0));

    CHECK(rho2(2, 2, 2).mat.trace().real() == doctest::Approx(1.0));
    CHECK(min_eigenvalue(rho2(2, 2, 2).mat) > -1e-12);

    // beta rho2 - rho1 is PSD and tight at (3,3), beta = 16/7.
    ComplexMatrix gap = rho2(3, 3, 2).mat;
    gap *= cplx(16.0 / 7.0, 0.0);
    gap -= rho1(3, 3, 2).mat;
    CHECK(min_eigenvalue(gap) > -1e-10);
}
