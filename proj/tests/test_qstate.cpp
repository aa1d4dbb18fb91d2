#include <catch2/catch_amalgamated.hpp>

#include <qkdprobe/probes.hpp>
#include <qkdprobe/qstate.hpp>

#include "test_helpers.hpp"

using namespace qkdprobe;
using Catch::Matchers::WithinAbs;
using testutil::random_hermitian;
using testutil::random_ket;

namespace {

Ket plus_state() {
    Ket k(2);
    k[0] = 1.0 / std::sqrt(2.0);
    k[1] = 1.0 / std::sqrt(2.0);
    return k;
}

} // namespace

TEST_CASE("tensor products follow the basis ordering") {
    const Ket k00 = tensor(Ket::basis(2, 0), Ket::basis(2, 0));
    CHECK_THAT(k00[0].real(), WithinAbs(1.0, 0.0));
    CHECK_THAT(std::abs(k00[1]) + std::abs(k00[2]) + std::abs(k00[3]), WithinAbs(0.0, 0.0));

    const Ket k10 = tensor(Ket::basis(2, 1), Ket::basis(2, 0));
    CHECK_THAT(k10[2].real(), WithinAbs(1.0, 0.0));
    CHECK_THAT(std::abs(k10[0]) + std::abs(k10[1]) + std::abs(k10[3]), WithinAbs(0.0, 0.0));

    const Ket mixed = tensor(plus_state(), Ket::basis(2, 1));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK_THAT(std::abs(mixed[0]), WithinAbs(0.0, 1e-15));
    CHECK_THAT(mixed[1].real(), WithinAbs(r, 1e-15));
    CHECK_THAT(std::abs(mixed[2]), WithinAbs(0.0, 1e-15));
    CHECK_THAT(mixed[3].real(), WithinAbs(r, 1e-15));
}

TEST_CASE("tensor rejects unsupported dimensions") {
    const Ket k4(4);
    CHECK_THROWS_AS(tensor(k4, k4), InvalidDimension);
    CHECK_THROWS_AS(tensor(Ket(8), Ket(2)), InvalidDimension);
}

TEST_CASE("tensor is norm-multiplicative and associative") {
    for (int trial = 0; trial < 50; ++trial) {
        const Ket a = random_ket(2);
        const Ket b = random_ket(2);
        const Ket c = random_ket(2);
        const Ket left = tensor(tensor(a, b), c);
        const Ket right = tensor(a, tensor(b, c));
        CHECK(testutil::distance(left, right) < 1e-14);
        CHECK_THAT(left.norm(), WithinAbs(a.norm() * b.norm() * c.norm(), 1e-12));
    }
}

TEST_CASE("inner products") {
    CHECK_THAT(std::abs(inner(Ket::basis(2, 0), Ket::basis(2, 1))), WithinAbs(0.0, 0.0));

    const Ket psi = random_ket(4);
    CHECK_THAT(inner(psi, psi).real(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(inner(psi, psi).imag(), WithinAbs(0.0, 1e-12));

    const auto bell = bell_basis();
    CHECK_THAT(std::abs(inner(bell[0], bell[1])), WithinAbs(0.0, 1e-15));

    // conjugate-linear in the first argument
    const Ket a = random_ket(2), b = random_ket(2);
    const cplx z(0.3, -1.2);
    CHECK(std::abs(inner(z * a, b) - std::conj(z) * inner(a, b)) < 1e-14);

    CHECK_THROWS_AS(inner(Ket(2), Ket(4)), InvalidDimension);
}

TEST_CASE("partial trace of a maximally entangled state is maximally mixed") {
    const auto bell = bell_basis();
    for (int keep = 1; keep <= 2; ++keep) {
        const Operator reduced = partial_trace(outer(bell[0]), 2, 2, keep);
        CHECK(testutil::distance(reduced, 0.5 * Operator::identity(2)) < 1e-14);
    }
}

TEST_CASE("partial trace of a product state recovers the factor") {
    for (int trial = 0; trial < 20; ++trial) {
        const Ket a = random_ket(2), b = random_ket(2);
        const Operator rho = outer(tensor(a, b));
        CHECK(testutil::distance(partial_trace(rho, 2, 2, 1), outer(a)) < 1e-13);
        CHECK(testutil::distance(partial_trace(rho, 2, 2, 2), outer(b)) < 1e-13);
    }
}

TEST_CASE("partial trace preserves trace and hermiticity") {
    for (int trial = 0; trial < 20; ++trial) {
        const Operator rho = random_hermitian(8);
        for (int keep = 1; keep <= 2; ++keep) {
            const Operator r = partial_trace(rho, 2, 4, keep);
            CHECK(std::abs(r.trace() - rho.trace()) < 1e-13);
            CHECK(r.hermiticity_defect() < 1e-13);
        }
    }
    CHECK_THROWS_AS(partial_trace(Operator(8), 2, 2, 1), InvalidDimension);
    CHECK_THROWS_AS(partial_trace(Operator(4), 2, 2, 3), InvalidDimension);
}

TEST_CASE("reduced probe state carries the expected off-diagonal element") {
    // Eve's conditional state for the second signal has off-diagonal entry
    // delta sqrt(1-delta^2) (ac - bd).
    for (int trial = 0; trial < 50; ++trial) {
        const double a = testutil::uniform01();
        const double c = testutil::uniform01();
        const double delta = testutil::uniform01();
        const OneQubitProbeParams p(a, c, delta);
        const ProbePair pp = build_one_qubit_probe(p);
        const Operator rho_y = partial_trace(outer(pp.Y), 2, 2, 2);
        const double expected = delta * std::sqrt(1.0 - delta * delta) * (a * c - p.b * p.d);
        CHECK_THAT(rho_y(0, 1).real(), WithinAbs(expected, 1e-13));
        CHECK_THAT(rho_y(0, 1).imag(), WithinAbs(0.0, 1e-13));
    }
}

TEST_CASE("eigh solves diagonal and Pauli-X matrices") {
    Operator diag(2);
    diag(0, 0) = 3.0;
    diag(1, 1) = 1.0;
    const auto pairs = eigh(diag);
    REQUIRE(pairs.size() == 2);
    CHECK_THAT(pairs[0].first, WithinAbs(3.0, 1e-12));
    CHECK_THAT(pairs[1].first, WithinAbs(1.0, 1e-12));
    CHECK_THAT(std::abs(inner(pairs[0].second, Ket::basis(2, 0))), WithinAbs(1.0, 1e-12));
    CHECK_THAT(std::abs(inner(pairs[1].second, Ket::basis(2, 1))), WithinAbs(1.0, 1e-12));

    Operator flip(2);
    flip(0, 1) = 1.0;
    flip(1, 0) = 1.0;
    const auto xp = eigh(flip);
    CHECK_THAT(xp[0].first, WithinAbs(1.0, 1e-12));
    CHECK_THAT(xp[1].first, WithinAbs(-1.0, 1e-12));
    Ket plus = plus_state();
    CHECK_THAT(std::abs(inner(xp[0].second, plus)), WithinAbs(1.0, 1e-10));
}

TEST_CASE("eigh matches the closed 2x2 eigenvalue formula") {
    // [[m, -k], [-k, -m]] has eigenvalues +-sqrt(m^2 + k^2)
    for (int trial = 0; trial < 100; ++trial) {
        const double m = 2.0 * testutil::uniform01() - 1.0;
        const double k = 2.0 * testutil::uniform01() - 1.0;
        Operator h(2);
        h(0, 0) = m;
        h(0, 1) = -k;
        h(1, 0) = -k;
        h(1, 1) = -m;
        const auto pairs = eigh(h);
        const double r = std::hypot(m, k);
        CHECK_THAT(pairs[0].first, WithinAbs(r, 1e-12));
        CHECK_THAT(pairs[1].first, WithinAbs(-r, 1e-12));
    }
}

TEST_CASE("eigh rejects non-Hermitian input") {
    Operator bad(2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(eigh(bad), NotHermitian);
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
    for (int dim : {2, 4, 8}) {
        for (int trial = 0; trial < 20; ++trial) {
            const Operator h = random_hermitian(dim);
            const auto pairs = eigh(h);
            REQUIRE(static_cast<int>(pairs.size()) == dim);

            Operator sum(dim);
            for (const auto& [val, vec] : pairs) sum += val * outer(vec);
            CHECK(testutil::distance(sum, h) < 1e-10);

            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (i > 0) CHECK(pairs[i - 1].first >= pairs[i].first);
                for (std::size_t j = 0; j < pairs.size(); ++j) {
                    const double want = i == j ? 1.0 : 0.0;
                    CHECK_THAT(std::abs(inner(pairs[i].second, pairs[j].second)),
                               WithinAbs(want, 1e-10));
                }
                const Ket hv = h.apply(pairs[i].second);
                const Ket lv = pairs[i].first * pairs[i].second;
                CHECK(testutil::distance(hv, lv) < 1e-10);
            }
        }
    }
}
