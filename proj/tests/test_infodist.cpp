#include <catch2/catch_amalgamated.hpp>

#include <qkdprobe/infodist.hpp>
#include <qkdprobe/sweep.hpp>

#include "test_helpers.hpp"

using namespace qkdprobe;
using Catch::Matchers::WithinAbs;

namespace {

double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

Povm one_qubit_povm(const OneQubitProbeParams& p) {
    return angle_degenerate(p) ? canonical_povm() : closed_form_povm(p);
}

} // namespace

TEST_CASE("phi anchors and cross-check") {
    CHECK_THAT(phi(0.0), WithinAbs(0.0, 0.0));
    CHECK_THAT(phi(1.0), WithinAbs(2.0, 0.0));
    CHECK_THAT(phi(0.28), WithinAbs(0.11463, 1e-5));

    // independent route: phi(z) = 2 (1 - h((1+z)/2))
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double z = i / 100.0;
        const double expected = 2.0 * (1.0 - binary_entropy(0.5 * (1.0 + z)));
        CHECK_THAT(phi(z), WithinAbs(expected, 1e-12));
        CHECK(phi(z) >= prev); // monotone increasing
        prev = phi(z);
    }

    CHECK_THROWS_AS(phi(-0.01), InvalidParams);
    CHECK_THROWS_AS(phi(1.01), InvalidParams);
}

TEST_CASE("optimal bound anchors") {
    CHECK_THAT(optimal_bound(0.0), WithinAbs(0.0, 0.0));
    CHECK_THAT(optimal_bound(0.5), WithinAbs(1.0, 1e-15));
    CHECK_THAT(optimal_bound(0.1), WithinAbs(0.5 * phi(0.6), 1e-15));

    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
        const double d = 0.5 * i / 50.0;
        CHECK(optimal_bound(d) >= prev);
        prev = optimal_bound(d);
    }

    CHECK_THROWS_AS(optimal_bound(-0.1), InvalidParams);
    CHECK_THROWS_AS(optimal_bound(0.6), InvalidParams);

    CHECK_THAT(bound_for_disturbance(0.7), WithinAbs(bound_for_disturbance(0.3), 1e-15));
}

TEST_CASE("closed-form gain anchors") {
    const GainReport full = gain_closed_form({1.0, 0.0, 0.0});
    CHECK_THAT(full.q[0], WithinAbs(0.5, 1e-12));
    CHECK_THAT(full.q[1], WithinAbs(0.5, 1e-12));
    CHECK_THAT(full.gain[0], WithinAbs(1.0, 1e-12));
    CHECK_THAT(full.gain[1], WithinAbs(1.0, 1e-12));
    CHECK_THAT(full.G, WithinAbs(1.0, 1e-12));
    CHECK_THAT(full.IAE, WithinAbs(1.0, 1e-12));
    CHECK_FALSE(full.degenerate);

    const double r = 1.0 / std::sqrt(2.0);
    const GainReport degen = gain_closed_form({r, r, 0.0});
    CHECK(degen.degenerate);
    CHECK_THAT(degen.G, WithinAbs(0.0, 0.0));
    CHECK_THAT(degen.IAE, WithinAbs(0.0, 0.0));

    const GainReport tilted = gain_closed_form({0.6, 0.9, 0.0});
    CHECK_THAT(tilted.q[0], WithinAbs(0.415, 1e-12));
    CHECK_THAT(tilted.q[1], WithinAbs(0.585, 1e-12));
    CHECK_THAT(tilted.gain[0], WithinAbs(0.90 / (4.0 * 0.415), 1e-12));
    CHECK_THAT(tilted.gain[1], WithinAbs(0.90 / (4.0 * 0.585), 1e-12));
}

TEST_CASE("gain report invariants hold on random parameters") {
    for (int trial = 0; trial < 1000; ++trial) {
        const OneQubitProbeParams p = testutil::random_one_qubit_params();
        const GainReport gr = gain_closed_form(p);
        CHECK_THAT(gr.q[0] + gr.q[1], WithinAbs(1.0, 1e-12));
        CHECK(gr.q[0] >= 0.0);
        CHECK(gr.q[1] >= 0.0);
        for (double g : gr.gain) {
            CHECK(g >= 0.0);
            CHECK(g <= 1.0);
        }
        CHECK_THAT(gr.G, WithinAbs(gr.q[0] * gr.gain[0] + gr.q[1] * gr.gain[1], 1e-12));
        CHECK_THAT(gr.IAE,
                   WithinAbs(0.5 * (gr.q[0] * phi(gr.gain[0]) + gr.q[1] * phi(gr.gain[1])),
                             1e-12));
    }
}

TEST_CASE("generic gain equals the closed form with the closed-form POVM") {
    for (int trial = 0; trial < 1000; ++trial) {
        const OneQubitProbeParams p = testutil::random_one_qubit_params();
        const GainReport want = gain_closed_form(p);
        const GainReport got = gain_generic(build_one_qubit_probe(p), closed_form_povm(p));
        CHECK_THAT(got.q[0], WithinAbs(want.q[0], 1e-10));
        CHECK_THAT(got.q[1], WithinAbs(want.q[1], 1e-10));
        CHECK_THAT(got.gain[0], WithinAbs(want.gain[0], 1e-10));
        CHECK_THAT(got.gain[1], WithinAbs(want.gain[1], 1e-10));
        CHECK_THAT(got.G, WithinAbs(want.G, 1e-10));
        CHECK_THAT(got.IAE, WithinAbs(want.IAE, 1e-10));
    }
}

TEST_CASE("an uninformative measurement yields zero gain") {
    const ProbePair pp = build_one_qubit_probe({0.7, 0.2, 0.3});
    Povm flat;
    flat.kind = PovmKind::Custom;
    flat.guess = {0, 1};
    flat.elements = {0.5 * Operator::identity(2), 0.5 * Operator::identity(2)};
    const GainReport gr = gain_generic(pp, flat);
    CHECK_THAT(gr.G, WithinAbs(0.0, 1e-14));
    CHECK_THAT(gr.IAE, WithinAbs(0.0, 1e-14));
}

TEST_CASE("two-qubit gain with the binary helstrom POVM respects the bound") {
    const ProbePair pp = build_two_qubit_probe({0.9, 0.9, 0.5, 0.0});
    const Operator rho_x = partial_trace(outer(pp.X), 2, 4, 2);
    const Operator rho_y = partial_trace(outer(pp.Y), 2, 4, 2);
    const Povm m = helstrom_povm(rho_x, rho_y, 0.5, 0.5);
    const GainReport gr = gain_generic(pp, m);
    const DisturbanceReport dr = disturbance(pp, m, gr);
    CHECK(gr.IAE <= bound_for_disturbance(dr.D) + 1e-9);
}

TEST_CASE("conditional errors coincide at delta=0 and split at delta>0") {
    for (int trial = 0; trial < 300; ++trial) {
        const OneQubitProbeParams p = testutil::random_one_qubit_params(false);
        const ProbePair pp = build_one_qubit_probe(p);
        const ConditionalErrors ce = conditional_errors(pp, closed_form_povm(p));
        for (std::size_t l = 0; l < ce.du.size(); ++l) {
            if (!ce.du_defined[l] || !ce.dv_defined[l]) continue;
            CHECK_THAT(ce.du[l], WithinAbs(ce.dv[l], 1e-12));
        }
    }

    double asymmetry = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const OneQubitProbeParams p(testutil::uniform01(), testutil::uniform01(), 0.05);
        if (angle_degenerate(p)) continue;
        const ProbePair pp = build_one_qubit_probe(p);
        const ConditionalErrors ce = conditional_errors(pp, closed_form_povm(p));
        for (std::size_t l = 0; l < ce.du.size(); ++l) {
            if (!ce.du_defined[l] || !ce.dv_defined[l]) continue;
            asymmetry = std::max(asymmetry, std::abs(ce.du[l] - ce.dv[l]));
        }
    }
    CHECK(asymmetry > 1e-6);
}

TEST_CASE("a full-information attack randomizes the conjugate basis") {
    // X=|00>, Y=|01>: Bob holds |0>, so both conjugate outcomes are equally
    // likely whatever Eve measures.
    const ProbePair pp = build_one_qubit_probe({1.0, 0.0, 0.0});
    const GainReport gr = gain_closed_form({1.0, 0.0, 0.0});

    for (const Povm& m : {canonical_povm(), closed_form_povm({1.0, 0.0, 0.0})}) {
        const ConditionalErrors ce = conditional_errors(pp, m);
        for (std::size_t l = 0; l < ce.du.size(); ++l) {
            if (gr.q[l] <= kOutcomeProbabilityFloor) continue;
            CHECK_THAT(ce.du[l], WithinAbs(0.5, 1e-12));
            CHECK_THAT(ce.dv[l], WithinAbs(0.5, 1e-12));
        }
    }
}

TEST_CASE("conditional errors spike near the resonance") {
    // locate the strongest D peak of the near-optimal sweep, then check the
    // numerator-vanishing mechanism produces an error rate above one half
    SweepSpec spec;
    spec.family = ProbeFamily::OneQubit;
    spec.param = "c";
    spec.from = 0.4;
    spec.to = 0.6;
    spec.steps = 801;
    spec.fixed = {{"a", 0.5}, {"delta", 0.05}};
    const auto rows = run_sweep(spec);
    const PeakReport report = find_peaks(rows, "D", 0.05);
    REQUIRE_FALSE(report.peaks.empty());

    double worst = 0.0;
    for (const Peak& peak : report.peaks) {
        const OneQubitProbeParams p(0.5, peak.location, 0.05);
        const ProbePair pp = build_one_qubit_probe(p);
        const ConditionalErrors ce = conditional_errors(pp, closed_form_povm(p));
        for (std::size_t l = 0; l < ce.du.size(); ++l) {
            if (ce.du_defined[l]) worst = std::max(worst, ce.du[l]);
            if (ce.dv_defined[l]) worst = std::max(worst, ce.dv[l]);
        }
    }
    CHECK(worst > 0.5);
}

TEST_CASE("disturbance anchors") {
    {
        const OneQubitProbeParams p(1.0, 0.0, 0.0);
        const DisturbanceReport dr =
            disturbance(build_one_qubit_probe(p), closed_form_povm(p), gain_closed_form(p));
        CHECK_THAT(dr.D, WithinAbs(0.5, 1e-12));
    }
    {
        const OneQubitProbeParams p(0.6, 0.9, 0.0);
        const DisturbanceReport dr =
            disturbance(build_one_qubit_probe(p), closed_form_povm(p), gain_closed_form(p));
        CHECK_THAT(dr.D, WithinAbs(disturbance_delta0(p), 1e-10));
        CHECK_THAT(dr.D, WithinAbs(0.0556440, 1e-6));
    }
    {
        const OneQubitProbeParams p(0.6, 0.6, 0.0);
        const DisturbanceReport dr =
            disturbance(build_one_qubit_probe(p), canonical_povm(), gain_closed_form(p));
        CHECK_THAT(dr.D, WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("disturbance validates priors and report shape") {
    const OneQubitProbeParams p(0.5, 0.9, 0.1);
    const ProbePair pp = build_one_qubit_probe(p);
    const Povm m = closed_form_povm(p);
    const GainReport gr = gain_closed_form(p);
    CHECK_THROWS_AS(disturbance(pp, m, gr, 0.7, 0.5), InvalidParams);

    GainReport wrong = gr;
    wrong.q.push_back(0.0);
    CHECK_THROWS_AS(disturbance(pp, m, wrong), InvalidParams);

    const DisturbanceReport dr = disturbance(pp, m, gr, 0.25, 0.75);
    CHECK_THAT(dr.D, WithinAbs(0.25 * dr.Du + 0.75 * dr.Dv, 1e-15));
}

TEST_CASE("delta0 closed form matches the full pipeline") {
    for (int trial = 0; trial < 1000; ++trial) {
        const OneQubitProbeParams p(testutil::uniform01(), testutil::uniform01(), 0.0);
        const double want = disturbance_delta0(p);
        const ProbePair pp = build_one_qubit_probe(p);
        const Povm m = one_qubit_povm(p);
        const DisturbanceReport dr = disturbance(pp, m, gain_closed_form(p));
        CHECK_THAT(dr.D, WithinAbs(want, 1e-10));
    }
}

TEST_CASE("disturbance_delta0 rejects nonzero delta") {
    CHECK_THAT(disturbance_delta0({1.0, 0.0, 0.0}), WithinAbs(0.5, 0.0));
    CHECK_THAT(disturbance_delta0({0.8, 0.8, 0.0}), WithinAbs(0.0, 1e-15));
    CHECK_THAT(disturbance_delta0({0.5, 0.6, 0.0}), WithinAbs(0.003590, 1e-6));
    CHECK_THROWS_AS(disturbance_delta0({0.5, 0.6, 0.1}), InvalidParams);
}

TEST_CASE("mutual information stays below the optimal bound") {
    for (int trial = 0; trial < 1000; ++trial) {
        const OneQubitProbeParams p = testutil::random_one_qubit_params();
        const ProbePair pp = build_one_qubit_probe(p);
        const Povm m = closed_form_povm(p);
        const GainReport gr = gain_closed_form(p);
        const DisturbanceReport dr = disturbance(pp, m, gr);
        CHECK(gr.IAE <= bound_for_disturbance(dr.D) + 1e-9);

        // probability sanity
        for (double x : {dr.Du, dr.Dv, dr.D, gr.q[0], gr.q[1]}) {
            CHECK(x >= -1e-12);
            CHECK(x <= 1.0 + 1e-12);
        }
        for (std::size_t l = 0; l < dr.du.size(); ++l) {
            if (gr.q[l] <= kOutcomeProbabilityFloor) continue;
            CHECK(dr.du[l] >= -1e-12);
            CHECK(dr.du[l] <= 1.0 + 1e-12);
            CHECK(dr.dv[l] >= -1e-12);
            CHECK(dr.dv[l] <= 1.0 + 1e-12);
        }
    }
}
