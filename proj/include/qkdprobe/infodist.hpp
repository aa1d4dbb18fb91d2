#pragma once

// Information-theoretic quantities of an eavesdropping strategy: Eve's
// average information gain, the Alice-Eve mutual information, Bob's
// conditional error rates and the averaged disturbance, plus the optimal
// mutual-information bound at fixed disturbance.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "measurement.hpp"
#include "probes.hpp"
#include "qstate.hpp"

namespace qkdprobe {

/// phi(z) = (1+z) log2(1+z) + (1-z) log2(1-z) on [0,1], with the
/// 0*log2(0) = 0 convention at z = 1. Monotone increasing, phi(1) = 2.
inline double phi(double z) {
    if (!(z >= 0.0 && z <= 1.0)) {
        throw InvalidParams("phi: argument " + std::to_string(z) + " outside [0,1]");
    }
    const double hi = (1.0 + z) * std::log2(1.0 + z);
    const double lo = z < 1.0 ? (1.0 - z) * std::log2(1.0 - z) : 0.0;
    return hi + lo;
}

/// The optimal Alice-Eve mutual information at disturbance D:
/// (1/2) phi(2 sqrt(D(1-D))), for D in [0, 1/2].
inline double optimal_bound(double disturbance) {
    if (!(disturbance >= 0.0 && disturbance <= 0.5)) {
        throw InvalidParams("optimal_bound: disturbance " + std::to_string(disturbance) +
                            " outside [0, 1/2]");
    }
    const double z = std::min(1.0, 2.0 * std::sqrt(disturbance * (1.0 - disturbance)));
    return 0.5 * phi(z);
}

/// The bound evaluated at an arbitrary disturbance in [0,1]. The bound
/// expression is symmetric about 1/2, which covers resonance points whose
/// error rate exceeds one half.
inline double bound_for_disturbance(double disturbance) {
    if (!(disturbance >= -1e-12 && disturbance <= 1.0 + 1e-12)) {
        throw InvalidParams("bound_for_disturbance: disturbance outside [0,1]");
    }
    const double sym = std::clamp(std::min(disturbance, 1.0 - disturbance), 0.0, 0.5);
    return optimal_bound(sym);
}

/// Outcome probabilities, per-outcome gains, the average gain and the
/// Alice-Eve mutual information of one strategy/measurement pair.
/// Two entries for the binary measurements; one per outcome otherwise.
struct GainReport {
    std::vector<double> q;    // outcome probabilities, sum to 1
    std::vector<double> gain; // per-outcome gain in [0,1]
    double G = 0.0;           // sum_l q_l gain_l
    double IAE = 0.0;         // (1/2) sum_l q_l phi(gain_l), bits
    bool degenerate = false;
};

inline constexpr double kOutcomeProbabilityFloor = 1e-14;
inline constexpr double kConditioningFloor = 1e-13;

/// Closed-form gain of the one-qubit probe. At a degenerate angle (Eve's
/// conditional states coincide) returns the zero-gain report with the
/// canonical-measurement outcome probabilities (a^2, b^2).
inline GainReport gain_closed_form(const OneQubitProbeParams& p) {
    GainReport r;
    if (angle_degenerate(p)) {
        r.q = {p.a * p.a, p.b * p.b};
        r.gain = {0.0, 0.0};
        r.degenerate = true;
        return r;
    }
    const MeasAngle ang = meas_angle(p);
    const double a2 = p.a * p.a, b2 = p.b * p.b, c2 = p.c * p.c, d2 = p.d * p.d;
    const double dl2 = p.delta * p.delta;
    const double mix = p.delta * std::sqrt(1.0 - dl2) * std::abs(p.a * p.c - p.b * p.d);
    const double bias = 0.25 * (1.0 - dl2) * (a2 - b2 + c2 - d2) * ang.cos_phi -
                        0.5 * mix * ang.sin_phi;
    const double q0 = 0.5 + bias;
    const double q1 = 0.5 - bias;
    const double num =
        0.25 * std::abs(((a2 - b2 - c2 + d2) + dl2 * (a2 - b2 + c2 - d2)) * ang.cos_phi +
                        2.0 * mix * ang.sin_phi);
    const double g0 = q0 > kOutcomeProbabilityFloor ? std::min(num / q0, 1.0) : 0.0;
    const double g1 = q1 > kOutcomeProbabilityFloor ? std::min(num / q1, 1.0) : 0.0;
    r.q = {q0, q1};
    r.gain = {g0, g1};
    r.G = q0 * g0 + q1 * g1;
    r.IAE = 0.5 * (q0 * phi(g0) + q1 * phi(g1));
    return r;
}

/// Born-rule gain for any probe pair and measurement on Eve's subsystem:
/// q_l = (tr[rho_x E_l] + tr[rho_y E_l])/2 and
/// gain_l = |tr[rho_x E_l] - tr[rho_y E_l]| / (tr[rho_x E_l] + tr[rho_y E_l]),
/// where rho_x, rho_y are Eve's conditional states. Outcomes with
/// probability below 1e-14 carry zero gain.
inline GainReport gain_generic(const ProbePair& pp, const Povm& m) {
    if (m.dim() != pp.eve_dim) {
        throw InvalidDimension("gain_generic: measurement does not act on Eve's space");
    }
    const Operator rho_x = partial_trace(outer(pp.X), pp.bob_dim, pp.eve_dim, 2);
    const Operator rho_y = partial_trace(outer(pp.Y), pp.bob_dim, pp.eve_dim, 2);

    GainReport r;
    for (const Operator& e : m.elements) {
        const double tx = std::max(0.0, (rho_x * e).trace().real());
        const double ty = std::max(0.0, (rho_y * e).trace().real());
        const double q = 0.5 * (tx + ty);
        r.q.push_back(q);
        r.gain.push_back(q > kOutcomeProbabilityFloor ? std::abs(tx - ty) / (tx + ty) : 0.0);
    }
    for (std::size_t l = 0; l < r.q.size(); ++l) {
        r.G += r.q[l] * r.gain[l];
        if (r.q[l] > kOutcomeProbabilityFloor) r.IAE += 0.5 * r.q[l] * phi(r.gain[l]);
    }
    return r;
}

/// Per-outcome conditional error rates of Bob in the conjugate basis:
/// d_lu = 1 - <U|(|u><u| x E_l)|U> / <U|(1 x E_l)|U>, and the v analog.
/// An outcome whose conditioning probability falls below 1e-13 is reported
/// as undefined (NaN) rather than patched.
struct ConditionalErrors {
    std::vector<double> du;
    std::vector<double> dv;
    std::vector<bool> du_defined;
    std::vector<bool> dv_defined;
};

inline ConditionalErrors conditional_errors(const ProbePair& pp, const Povm& m) {
    if (m.dim() != pp.eve_dim) {
        throw InvalidDimension("conditional_errors: measurement does not act on Eve's space");
    }
    const ConjugateSignals cs = conjugate_signals(pp);
    const Operator proj_u = outer(cs.u);
    const Operator proj_v = outer(cs.v);
    const Operator id_bob = Operator::identity(pp.bob_dim);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    ConditionalErrors ce;
    for (const Operator& e : m.elements) {
        const Operator any_e = tensor(id_bob, e);
        const double den_u = expectation(any_e, cs.U);
        if (den_u < kConditioningFloor) {
            ce.du.push_back(nan);
            ce.du_defined.push_back(false);
        } else {
            ce.du.push_back(1.0 - expectation(tensor(proj_u, e), cs.U) / den_u);
            ce.du_defined.push_back(true);
        }
        const double den_v = expectation(any_e, cs.V);
        if (den_v < kConditioningFloor) {
            ce.dv.push_back(nan);
            ce.dv_defined.push_back(false);
        } else {
            ce.dv.push_back(1.0 - expectation(tensor(proj_v, e), cs.V) / den_v);
            ce.dv_defined.push_back(true);
        }
    }
    return ce;
}

/// Bob's disturbance: Du = sum_l q_l d_lu, Dv = sum_l q_l d_lv,
/// D = pu Du + pv Dv, with the q_l of the gain report (the signal-averaged
/// outcome probabilities, not the U- or V-conditioned ones).
struct DisturbanceReport {
    std::vector<double> du;
    std::vector<double> dv;
    double Du = 0.0;
    double Dv = 0.0;
    double pu = 0.5;
    double pv = 0.5;
    double D = 0.0;
};

inline DisturbanceReport disturbance(const ProbePair& pp, const Povm& m, const GainReport& gr,
                                     double pu = 0.5, double pv = 0.5) {
    if (pu < 0.0 || pv < 0.0 || std::abs(pu + pv - 1.0) > 1e-12) {
        throw InvalidParams("disturbance: prior signal probabilities must sum to 1");
    }
    if (gr.q.size() != m.size()) {
        throw InvalidParams("disturbance: gain report does not match the measurement");
    }
    const ConditionalErrors ce = conditional_errors(pp, m);

    DisturbanceReport r;
    r.du = ce.du;
    r.dv = ce.dv;
    r.pu = pu;
    r.pv = pv;
    for (std::size_t l = 0; l < gr.q.size(); ++l) {
        if (gr.q[l] <= kOutcomeProbabilityFloor) continue; // zero-weight outcome
        if (!ce.du_defined[l] || !ce.dv_defined[l]) {
            throw DegenerateConditioning(
                "disturbance: conditioning probability vanished for outcome " +
                std::to_string(l));
        }
        r.Du += gr.q[l] * ce.du[l];
        r.Dv += gr.q[l] * ce.dv[l];
    }
    r.D = pu * r.Du + pv * r.Dv;
    return r;
}

/// Closed-form disturbance of the one-qubit probe at delta = 0:
/// D = (1 - ac - bd)/2.
inline double disturbance_delta0(const OneQubitProbeParams& p) {
    if (p.delta != 0.0) {
        throw InvalidParams("disturbance_delta0: requires delta = 0");
    }
    return 0.5 * (1.0 - p.a * p.c - p.b * p.d);
}

} // namespace qkdprobe
