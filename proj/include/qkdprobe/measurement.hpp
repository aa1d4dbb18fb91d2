#pragma once

// Eve's measurements: the closed-form two-outcome POVM for the one-qubit
// probe, the binary Helstrom construction for arbitrary pairs of density
// operators, and the complete Helstrom-basis measurement (one rank-1
// projector per eigenvector of the weighted state difference).

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "probes.hpp"
#include "qstate.hpp"

namespace qkdprobe {

/// How a Povm was constructed. Results downstream carry this tag so it is
/// always clear which measurement produced a number.
enum class PovmKind {
    ClosedForm,    // one-qubit closed form
    Helstrom,      // binary sign-space projectors of q0*rho0 - q1*rho1
    HelstromBasis, // complete eigenbasis of q0*rho0 - q1*rho1, rank-1 outcomes
    Canonical,     // computational-basis projectors
    Custom,
};

inline const char* to_string(PovmKind k) {
    switch (k) {
        case PovmKind::ClosedForm: return "closed-form";
        case PovmKind::Helstrom: return "helstrom";
        case PovmKind::HelstromBasis: return "helstrom-basis";
        case PovmKind::Canonical: return "canonical";
        case PovmKind::Custom: return "custom";
    }
    return "unknown";
}

/// A positive-operator-valued measure. Elements are Hermitian, positive
/// semidefinite and sum to the identity. guess[i] is the signal (0 for x,
/// 1 for y) Eve infers from outcome i.
struct Povm {
    std::vector<Operator> elements;
    PovmKind kind = PovmKind::Custom;
    std::vector<int> guess;

    int dim() const { return elements.empty() ? 0 : elements.front().dim(); }
    std::size_t size() const { return elements.size(); }
};

namespace detail {

inline void check_povm_completeness(const Povm& m, const char* what) {
    if (m.elements.empty()) throw InvalidState(std::string(what) + ": empty POVM");
    const int d = m.elements.front().dim();
    Operator sum(d);
    for (const Operator& e : m.elements) {
        if (e.dim() != d) throw InvalidDimension(std::string(what) + ": mixed dimensions");
        if (e.hermiticity_defect() > 1e-12) {
            throw InvalidState(std::string(what) + ": non-Hermitian element");
        }
        sum += e;
    }
    sum -= Operator::identity(d);
    if (sum.frobenius_norm() > 1e-12 * d) {
        throw InvalidState(std::string(what) + ": elements do not sum to identity");
    }
}

inline void check_density(const Operator& rho, const char* what) {
    if (rho.hermiticity_defect() > 1e-12) {
        throw InvalidState(std::string(what) + ": not Hermitian");
    }
    if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-10) {
        throw InvalidState(std::string(what) + ": trace differs from 1");
    }
    for (const auto& [val, vec] : eigh(rho)) {
        if (val < -1e-10) {
            throw InvalidState(std::string(what) + ": negative eigenvalue " +
                               std::to_string(val));
        }
    }
}

} // namespace detail

/// The measurement angle of the one-qubit closed-form POVM.
struct MeasAngle {
    double alpha_meas; // (a^2-c^2) - delta^2 (b^2-c^2)
    double beta_meas;  // delta sqrt(1-delta^2) (ac-bd)
    double cos_phi;
    double sin_phi; // nonnegative root
    double sgn;     // sign of (ac-bd), with sign(0) := +1
};

/// True when both angle components vanish, i.e. Eve's conditional states
/// coincide and the closed-form angle is undefined.
inline bool angle_degenerate(const OneQubitProbeParams& p) {
    const double am = (p.a * p.a - p.c * p.c) - p.delta * p.delta * (p.b * p.b - p.c * p.c);
    const double bm = p.delta * std::sqrt(1.0 - p.delta * p.delta) * (p.a * p.c - p.b * p.d);
    return std::hypot(am, bm) <= 1e-14;
}

inline MeasAngle meas_angle(const OneQubitProbeParams& p) {
    const double am = (p.a * p.a - p.c * p.c) - p.delta * p.delta * (p.b * p.b - p.c * p.c);
    const double bm = p.delta * std::sqrt(1.0 - p.delta * p.delta) * (p.a * p.c - p.b * p.d);
    const double r = std::hypot(am, bm);
    if (r <= 1e-14) {
        throw DegenerateAngle("meas_angle: both angle components vanish");
    }
    MeasAngle ang;
    ang.alpha_meas = am;
    ang.beta_meas = bm;
    ang.cos_phi = std::clamp(am / r, -1.0, 1.0);
    ang.sin_phi = std::sqrt(std::max(0.0, 1.0 - ang.cos_phi * ang.cos_phi));
    ang.sgn = (p.a * p.c - p.b * p.d) >= 0.0 ? 1.0 : -1.0;
    return ang;
}

/// Computational-basis projectors {|0><0|, |1><1|}. Used as the reporting
/// convention at degenerate one-qubit points, where every complete
/// measurement is equally uninformative.
inline Povm canonical_povm() {
    Povm m;
    m.kind = PovmKind::Canonical;
    m.guess = {0, 1};
    m.elements.push_back(outer(Ket::basis(2, 0)));
    m.elements.push_back(outer(Ket::basis(2, 1)));
    return m;
}

/// The closed-form two-outcome POVM for the one-qubit probe: rank-1
/// orthogonal projectors onto
///   |E0> = (-sgn sqrt(1+cos) |0> + sqrt(1-cos) |1>)/sqrt(2)
///   |E1> = ( sqrt(1-cos) |0> + sgn sqrt(1+cos) |1>)/sqrt(2)
inline Povm closed_form_povm(const OneQubitProbeParams& p) {
    const MeasAngle ang = meas_angle(p);
    const double r = 1.0 / std::sqrt(2.0);
    const double plus = std::sqrt(1.0 + ang.cos_phi);
    const double minus = std::sqrt(1.0 - ang.cos_phi);
    Ket e0(2), e1(2);
    e0[0] = -ang.sgn * plus * r;
    e0[1] = minus * r;
    e1[0] = minus * r;
    e1[1] = ang.sgn * plus * r;
    Povm m;
    m.kind = PovmKind::ClosedForm;
    m.guess = {0, 1};
    m.elements.push_back(outer(e0));
    m.elements.push_back(outer(e1));
    detail::check_povm_completeness(m, "closed_form_povm");
    return m;
}

/// Binary minimum-error (Helstrom) measurement for discriminating rho0 from
/// rho1 with the given priors: E+ projects onto the strictly positive
/// eigenspace of q0*rho0 - q1*rho1, E- = 1 - E+ (zero eigenvalues go to E-).
inline Povm helstrom_povm(const Operator& rho0, const Operator& rho1, double q0_prior,
                          double q1_prior) {
    detail::check_density(rho0, "helstrom_povm rho0");
    detail::check_density(rho1, "helstrom_povm rho1");
    if (q0_prior < 0.0 || q1_prior < 0.0 || std::abs(q0_prior + q1_prior - 1.0) > 1e-12) {
        throw InvalidState("helstrom_povm: priors must be nonnegative and sum to 1");
    }
    if (rho0.dim() != rho1.dim()) throw InvalidDimension("helstrom_povm: dimension mismatch");

    const Operator diff = q0_prior * rho0 - q1_prior * rho1;
    Operator plus(rho0.dim());
    for (const auto& [val, vec] : eigh(diff)) {
        if (val > 1e-12) plus += outer(vec);
    }
    Povm m;
    m.kind = PovmKind::Helstrom;
    m.guess = {0, 1};
    m.elements.push_back(plus);
    m.elements.push_back(Operator::identity(rho0.dim()) - plus);
    detail::check_povm_completeness(m, "helstrom_povm");
    return m;
}

/// Complete measurement in the eigenbasis of q0*rho0 - q1*rho1: one rank-1
/// projector per eigenvector, ordered by descending eigenvalue. Outcomes
/// with positive eigenvalue carry guess 0, the rest guess 1. On a 2-dim
/// probe this coincides with the closed-form POVM; on the two-qubit probe it
/// resolves the outcome structure that the binary sign-space grouping
/// averages away.
inline Povm helstrom_basis_povm(const Operator& rho0, const Operator& rho1, double q0_prior,
                                double q1_prior) {
    detail::check_density(rho0, "helstrom_basis_povm rho0");
    detail::check_density(rho1, "helstrom_basis_povm rho1");
    if (q0_prior < 0.0 || q1_prior < 0.0 || std::abs(q0_prior + q1_prior - 1.0) > 1e-12) {
        throw InvalidState("helstrom_basis_povm: priors must be nonnegative and sum to 1");
    }
    if (rho0.dim() != rho1.dim()) {
        throw InvalidDimension("helstrom_basis_povm: dimension mismatch");
    }

    const Operator diff = q0_prior * rho0 - q1_prior * rho1;
    Povm m;
    m.kind = PovmKind::HelstromBasis;
    for (const auto& [val, vec] : eigh(diff)) {
        m.elements.push_back(outer(vec));
        m.guess.push_back(val > 1e-12 ? 0 : 1);
    }
    detail::check_povm_completeness(m, "helstrom_basis_povm");
    return m;
}

} // namespace qkdprobe
