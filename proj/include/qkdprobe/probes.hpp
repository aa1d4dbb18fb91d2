#pragma once

// Entangled channel outputs for Eve's one-qubit and two-qubit probe
// families, the Bell basis, and the conjugate-basis signals.
//
// Basis convention throughout: |Bob, Eve> with Eve's index varying fastest.
// For the two-qubit probe Eve's two qubits are ordered |e1 e2> with e2
// fastest, so her 4-dim index is 2*e1 + e2.

#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "qstate.hpp"

namespace qkdprobe {

namespace detail {

inline void require_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw InvalidParams(std::string(name) + " = " + std::to_string(x) +
                            " outside [0,1]");
    }
}

} // namespace detail

/// Strategy parameters of the one-qubit probe family. The amplitudes
/// b and d are the nonnegative roots completing a^2+b^2 = c^2+d^2 = 1.
struct OneQubitProbeParams {
    OneQubitProbeParams(double a_, double c_, double delta_)
        : a(a_), c(c_), delta(delta_) {
        detail::require_unit_interval(a, "a");
        detail::require_unit_interval(c, "c");
        detail::require_unit_interval(delta, "delta");
        b = std::sqrt(1.0 - a * a);
        d = std::sqrt(1.0 - c * c);
    }

    double a;
    double c;
    double delta;
    double b; // +sqrt(1-a^2)
    double d; // +sqrt(1-c^2)
};

/// Strategy parameters of the two-qubit probe family.
struct TwoQubitProbeParams {
    TwoQubitProbeParams(double alpha2_, double beta2_, double s_, double delta_)
        : alpha2(alpha2_), beta2(beta2_), s(s_), delta(delta_) {
        detail::require_unit_interval(alpha2, "alpha2");
        detail::require_unit_interval(beta2, "beta2");
        detail::require_unit_interval(s, "s");
        detail::require_unit_interval(delta, "delta");
    }

    double alpha2;
    double beta2;
    double s;
    double delta;
};

/// The entangled channel outputs for Alice's two computational-basis
/// signals: |x> -> |X>, |y> -> |Y>. Both are unit kets and <X|Y> = 0.
struct ProbePair {
    Ket X;
    Ket Y;
    int bob_dim = 2;
    int eve_dim = 2;
};

namespace detail {

inline void check_probe_pair(const ProbePair& pp) {
    if (std::abs(pp.X.norm() - 1.0) > 1e-12 || std::abs(pp.Y.norm() - 1.0) > 1e-12) {
        throw InvalidParams("probe construction lost normalization");
    }
    if (std::abs(inner(pp.X, pp.Y)) > 1e-12) {
        throw InvalidParams("probe construction lost orthogonality");
    }
}

} // namespace detail

/// |X> = a|00> + b|11>
/// |Y> = delta(-b|00> + a|11>) + sqrt(1-delta^2)(c|10> + d|01>)
inline ProbePair build_one_qubit_probe(const OneQubitProbeParams& p) {
    const double root = std::sqrt(1.0 - p.delta * p.delta);
    Ket x(4);
    x[0] = p.a;
    x[3] = p.b;
    Ket y(4);
    y[0] = -p.delta * p.b;
    y[3] = p.delta * p.a;
    y[2] = root * p.c;
    y[1] = root * p.d;
    ProbePair pp{std::move(x), std::move(y), 2, 2};
    detail::check_probe_pair(pp);
    return pp;
}

/// The maximally entangled Bell basis {Phi+, Phi-, Psi+, Psi-} on two qubits.
inline std::array<Ket, 4> bell_basis() {
    const double r = 1.0 / std::sqrt(2.0);
    Ket phip(4), phim(4), psip(4), psim(4);
    phip[0] = r;
    phip[3] = r;
    phim[0] = r;
    phim[3] = -r;
    psip[1] = r;
    psip[2] = r;
    psim[1] = r;
    psim[2] = -r;
    return {phip, phim, psip, psim};
}

/// Two-qubit probe family. Eve's conditional kets live in the Bell basis:
/// the xi kets span {Phi+, Phi-}, the zeta kets span {Psi+, Psi-}, and the
/// delta-weighted admixtures are the in-subspace orthogonal complements of
/// xi_x and zeta_x, so <X|Y> = 0 holds for every parameter choice.
inline ProbePair build_two_qubit_probe(const TwoQubitProbeParams& p) {
    const auto bell = bell_basis();
    const Ket& phip = bell[0];
    const Ket& phim = bell[1];
    const Ket& psip = bell[2];
    const Ket& psim = bell[3];

    const double ra = std::sqrt(p.alpha2), ra1 = std::sqrt(1.0 - p.alpha2);
    const double rb = std::sqrt(p.beta2), rb1 = std::sqrt(1.0 - p.beta2);
    const double rs = std::sqrt(p.s), rs1 = std::sqrt(1.0 - p.s);
    const double rd = p.delta, rd1 = std::sqrt(1.0 - p.delta * p.delta);

    const Ket xi_x = ra * phip + ra1 * phim;
    const Ket xi_y = ra * phip - ra1 * phim;
    const Ket zeta_x = rb * psip - rb1 * psim;
    const Ket zeta_y = rb * psip + rb1 * psim;
    // orthogonal complement of xi_x within the Phi subspace, and of
    // zeta_x within the Psi subspace
    const Ket xi_perp = -ra1 * phip + ra * phim;
    const Ket zeta_perp = -1.0 * (rb1 * psip + rb * psim);

    const Ket bob0 = Ket::basis(2, 0);
    const Ket bob1 = Ket::basis(2, 1);

    Ket x = rs * tensor(bob0, xi_x) + rs1 * tensor(bob1, zeta_x);
    Ket y = rs * tensor(bob1, rd1 * xi_y + rd * zeta_perp) +
            rs1 * tensor(bob0, rd1 * zeta_y + rd * xi_perp);

    ProbePair pp{std::move(x), std::move(y), 2, 4};
    detail::check_probe_pair(pp);
    return pp;
}

/// The conjugate-basis signals: u,v on Bob's qubit and the corresponding
/// channel outputs U = (X+Y)/sqrt(2), V = (X-Y)/sqrt(2). U and V are unit
/// kets because <X|Y> = 0.
struct ConjugateSignals {
    Ket u;
    Ket v;
    Ket U;
    Ket V;
};

inline ConjugateSignals conjugate_signals(const ProbePair& pp) {
    const double r = 1.0 / std::sqrt(2.0);
    Ket u(2), v(2);
    u[0] = r;
    u[1] = r;
    v[0] = r;
    v[1] = -r;
    return ConjugateSignals{u, v, r * (pp.X + pp.Y), r * (pp.X - pp.Y)};
}

} // namespace qkdprobe
