#pragma once

// Brute-force verification engine. Everything here is recomputed from the
// full joint Born-rule statistics P(alice signal, bob outcome, eve outcome)
// using only the linear-algebra layer; none of the closed-form gain or
// disturbance code paths are reused. Deliberately unoptimized.

#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "infodist.hpp"
#include "measurement.hpp"
#include "probes.hpp"
#include "qstate.hpp"

namespace qkdprobe {

enum class BobBasis { XY, UV };

/// Joint distribution over (alice signal, bob outcome, eve outcome) with
/// equiprobable signals. Signals and Bob outcomes are indexed 0/1 in the
/// chosen basis; eve outcomes follow the measurement's element order.
struct JointTable {
    BobBasis basis = BobBasis::XY;
    int eve_outcomes = 0;
    std::vector<double> p; // index: (signal*2 + bob)*eve_outcomes + eve

    double at(int signal, int bob, int eve) const {
        return p[static_cast<std::size_t>((signal * 2 + bob) * eve_outcomes + eve)];
    }
    double& at(int signal, int bob, int eve) {
        return p[static_cast<std::size_t>((signal * 2 + bob) * eve_outcomes + eve)];
    }
    double total() const {
        double t = 0.0;
        for (double x : p) t += x;
        return t;
    }
};

inline JointTable joint_statistics(const ProbePair& pp, const Povm& m, BobBasis basis) {
    if (m.dim() != pp.eve_dim) {
        throw InvalidDimension("joint_statistics: measurement does not act on Eve's space");
    }
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<Ket> signals;
    std::vector<Ket> bob;
    if (basis == BobBasis::XY) {
        signals = {pp.X, pp.Y};
        bob = {Ket::basis(2, 0), Ket::basis(2, 1)};
    } else {
        signals = {r * (pp.X + pp.Y), r * (pp.X - pp.Y)};
        Ket u(2), v(2);
        u[0] = r;
        u[1] = r;
        v[0] = r;
        v[1] = -r;
        bob = {u, v};
    }

    JointTable t;
    t.basis = basis;
    t.eve_outcomes = static_cast<int>(m.size());
    t.p.resize(static_cast<std::size_t>(4 * t.eve_outcomes));
    for (int s = 0; s < 2; ++s) {
        for (int b = 0; b < 2; ++b) {
            const Operator bob_proj = outer(bob[static_cast<std::size_t>(b)]);
            for (int e = 0; e < t.eve_outcomes; ++e) {
                const Operator joint =
                    tensor(bob_proj, m.elements[static_cast<std::size_t>(e)]);
                t.at(s, b, e) =
                    0.5 * expectation(joint, signals[static_cast<std::size_t>(s)]);
            }
        }
    }
    return t;
}

/// Gain quantities recovered from an XY-basis joint table: outcome
/// probabilities from the eve marginal, per-outcome gains from the signal
/// conditionals, and the mutual information directly from the joint
/// signal/eve distribution.
inline GainReport gain_from_joint(const JointTable& t) {
    if (t.basis != BobBasis::XY) {
        throw InvalidParams("gain_from_joint: requires an XY-basis table");
    }
    GainReport r;
    std::vector<double> p_sig_eve(static_cast<std::size_t>(2 * t.eve_outcomes));
    double p_sig[2] = {0.0, 0.0};
    for (int s = 0; s < 2; ++s) {
        for (int e = 0; e < t.eve_outcomes; ++e) {
            const double m = t.at(s, 0, e) + t.at(s, 1, e);
            p_sig_eve[static_cast<std::size_t>(s * t.eve_outcomes + e)] = m;
            p_sig[s] += m;
        }
    }
    for (int e = 0; e < t.eve_outcomes; ++e) {
        const double px = p_sig_eve[static_cast<std::size_t>(e)];
        const double py = p_sig_eve[static_cast<std::size_t>(t.eve_outcomes + e)];
        const double q = px + py;
        r.q.push_back(q);
        r.gain.push_back(q > kOutcomeProbabilityFloor ? std::abs(px - py) / q : 0.0);
    }
    for (std::size_t l = 0; l < r.q.size(); ++l) r.G += r.q[l] * r.gain[l];
    for (int s = 0; s < 2; ++s) {
        for (int e = 0; e < t.eve_outcomes; ++e) {
            const double pse = p_sig_eve[static_cast<std::size_t>(s * t.eve_outcomes + e)];
            if (pse <= 0.0) continue;
            r.IAE += pse * std::log2(pse / (p_sig[s] * r.q[static_cast<std::size_t>(e)]));
        }
    }
    return r;
}

/// Per-outcome conditional wrong-result rates from a UV-basis table:
/// d_lu = P(bob=v | signal=u, eve=l), d_lv = P(bob=u | signal=v, eve=l).
/// Undefined conditionals (vanishing denominator) are NaN.
struct OracleConditionals {
    std::vector<double> du;
    std::vector<double> dv;
};

inline OracleConditionals conditionals_from_joint(const JointTable& t) {
    if (t.basis != BobBasis::UV) {
        throw InvalidParams("conditionals_from_joint: requires a UV-basis table");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    OracleConditionals c;
    for (int e = 0; e < t.eve_outcomes; ++e) {
        const double den_u = t.at(0, 0, e) + t.at(0, 1, e);
        c.du.push_back(den_u < 0.5 * kConditioningFloor ? nan : t.at(0, 1, e) / den_u);
        const double den_v = t.at(1, 0, e) + t.at(1, 1, e);
        c.dv.push_back(den_v < 0.5 * kConditioningFloor ? nan : t.at(1, 0, e) / den_v);
    }
    return c;
}

/// Disturbance recovered from the two joint tables, weighting the UV
/// conditionals with the XY outcome probabilities.
inline DisturbanceReport disturbance_from_joints(const JointTable& xy, const JointTable& uv,
                                                 double pu = 0.5, double pv = 0.5) {
    if (pu < 0.0 || pv < 0.0 || std::abs(pu + pv - 1.0) > 1e-12) {
        throw InvalidParams("disturbance_from_joints: priors must sum to 1");
    }
    if (xy.eve_outcomes != uv.eve_outcomes) {
        throw InvalidParams("disturbance_from_joints: outcome counts differ");
    }
    const GainReport gr = gain_from_joint(xy);
    const OracleConditionals c = conditionals_from_joint(uv);

    DisturbanceReport r;
    r.du = c.du;
    r.dv = c.dv;
    r.pu = pu;
    r.pv = pv;
    for (std::size_t l = 0; l < gr.q.size(); ++l) {
        if (gr.q[l] <= kOutcomeProbabilityFloor) continue;
        if (std::isnan(c.du[l]) || std::isnan(c.dv[l])) {
            throw DegenerateConditioning(
                "disturbance_from_joints: conditioning probability vanished");
        }
        r.Du += gr.q[l] * c.du[l];
        r.Dv += gr.q[l] * c.dv[l];
    }
    r.D = pu * r.Du + pv * r.Dv;
    return r;
}

} // namespace qkdprobe
