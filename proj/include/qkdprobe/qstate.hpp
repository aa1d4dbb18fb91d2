#pragma once

// Minimal dense complex linear algebra over Hilbert spaces of dimension
// 2, 4 and 8: kets, operators, tensor products, partial trace and a
// Hermitian eigensolver. Basis order is |subsystem1, subsystem2> with the
// last subsystem varying fastest.

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qkdprobe {

using cplx = std::complex<double>;

namespace detail {

inline bool supported_dim(int dim) { return dim == 2 || dim == 4 || dim == 8; }

inline void require_dim(int dim, const char* what) {
    if (!supported_dim(dim)) {
        throw InvalidDimension(std::string(what) + ": unsupported dimension " +
                               std::to_string(dim));
    }
}

} // namespace detail

/// A dense complex state vector.
class Ket {
public:
    explicit Ket(int dim) : dim_(dim), amp_(static_cast<std::size_t>(dim)) {
        detail::require_dim(dim, "Ket");
    }

    Ket(std::initializer_list<cplx> amps)
        : dim_(static_cast<int>(amps.size())), amp_(amps) {
        detail::require_dim(dim_, "Ket");
        for (const cplx& a : amp_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw InvalidParams("Ket: non-finite amplitude");
            }
        }
    }

    /// Computational-basis vector |index> of the given dimension.
    static Ket basis(int dim, int index) {
        Ket k(dim);
        if (index < 0 || index >= dim) {
            throw InvalidDimension("Ket::basis: index out of range");
        }
        k.amp_[static_cast<std::size_t>(index)] = 1.0;
        return k;
    }

    int dim() const { return dim_; }

    cplx& operator[](int i) { return amp_[static_cast<std::size_t>(i)]; }
    const cplx& operator[](int i) const { return amp_[static_cast<std::size_t>(i)]; }

    double norm() const {
        double s = 0.0;
        for (const cplx& a : amp_) s += std::norm(a);
        return std::sqrt(s);
    }

    Ket& operator+=(const Ket& o) {
        if (dim_ != o.dim_) throw InvalidDimension("Ket +=: dimension mismatch");
        for (int i = 0; i < dim_; ++i) amp_[static_cast<std::size_t>(i)] += o[i];
        return *this;
    }

    Ket& operator-=(const Ket& o) {
        if (dim_ != o.dim_) throw InvalidDimension("Ket -=: dimension mismatch");
        for (int i = 0; i < dim_; ++i) amp_[static_cast<std::size_t>(i)] -= o[i];
        return *this;
    }

    Ket& operator*=(cplx z) {
        for (cplx& a : amp_) a *= z;
        return *this;
    }

private:
    int dim_;
    std::vector<cplx> amp_;
};

inline Ket operator+(Ket a, const Ket& b) { return a += b; }
inline Ket operator-(Ket a, const Ket& b) { return a -= b; }
inline Ket operator*(cplx z, Ket a) { return a *= z; }
inline Ket operator*(double z, Ket a) { return a *= cplx(z, 0.0); }

/// A dense complex square matrix (row-major).
class Operator {
public:
    explicit Operator(int dim)
        : dim_(dim), m_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
        detail::require_dim(dim, "Operator");
    }

    static Operator identity(int dim) {
        Operator op(dim);
        for (int i = 0; i < dim; ++i) op(i, i) = 1.0;
        return op;
    }

    int dim() const { return dim_; }

    cplx& operator()(int i, int j) {
        return m_[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) +
                  static_cast<std::size_t>(j)];
    }
    const cplx& operator()(int i, int j) const {
        return m_[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) +
                  static_cast<std::size_t>(j)];
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& e : m_) s += std::norm(e);
        return std::sqrt(s);
    }

    /// Largest |entries[i][j] - conj(entries[j][i])| over all pairs.
    double hermiticity_defect() const {
        double d = 0.0;
        for (int i = 0; i < dim_; ++i) {
            for (int j = 0; j < dim_; ++j) {
                d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
            }
        }
        return d;
    }

    bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

    Operator adjoint() const {
        Operator r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    Ket apply(const Ket& k) const {
        if (k.dim() != dim_) throw InvalidDimension("Operator::apply: dimension mismatch");
        Ket r(dim_);
        for (int i = 0; i < dim_; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * k[j];
            r[i] = s;
        }
        return r;
    }

    Operator& operator+=(const Operator& o) {
        if (dim_ != o.dim_) throw InvalidDimension("Operator +=: dimension mismatch");
        for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += o.m_[i];
        return *this;
    }

    Operator& operator-=(const Operator& o) {
        if (dim_ != o.dim_) throw InvalidDimension("Operator -=: dimension mismatch");
        for (std::size_t i = 0; i < m_.size(); ++i) m_[i] -= o.m_[i];
        return *this;
    }

    Operator& operator*=(cplx z) {
        for (cplx& e : m_) e *= z;
        return *this;
    }

private:
    int dim_;
    std::vector<cplx> m_;
};

inline Operator operator+(Operator a, const Operator& b) { return a += b; }
inline Operator operator-(Operator a, const Operator& b) { return a -= b; }
inline Operator operator*(cplx z, Operator a) { return a *= z; }
inline Operator operator*(double z, Operator a) { return a *= cplx(z, 0.0); }

inline Operator operator*(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw InvalidDimension("Operator *: dimension mismatch");
    Operator r(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        for (int k = 0; k < a.dim(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < a.dim(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

/// Kronecker product of kets; the second factor varies fastest.
inline Ket tensor(const Ket& a, const Ket& b) {
    if ((a.dim() != 2 && a.dim() != 4) || (b.dim() != 2 && b.dim() != 4) ||
        a.dim() * b.dim() > 8) {
        throw InvalidDimension("tensor: product dimension exceeds 8");
    }
    Ket r(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) r[i * b.dim() + j] = a[i] * b[j];
    return r;
}

/// Kronecker product of operators, matching the ket ordering.
inline Operator tensor(const Operator& a, const Operator& b) {
    if ((a.dim() != 2 && a.dim() != 4) || (b.dim() != 2 && b.dim() != 4) ||
        a.dim() * b.dim() > 8) {
        throw InvalidDimension("tensor: product dimension exceeds 8");
    }
    Operator r(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (int k = 0; k < b.dim(); ++k)
                for (int l = 0; l < b.dim(); ++l)
                    r(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
    return r;
}

/// <a|b>, conjugate-linear in the first argument.
inline cplx inner(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw InvalidDimension("inner: dimension mismatch");
    cplx s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// |a><b|
inline Operator outer(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw InvalidDimension("outer: dimension mismatch");
    Operator r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) r(i, j) = a[i] * std::conj(b[j]);
    return r;
}

/// |a><a|
inline Operator outer(const Ket& a) { return outer(a, a); }

/// <k|op|k>, returned as its real part (exact for Hermitian op).
inline double expectation(const Operator& op, const Ket& k) {
    return inner(k, op.apply(k)).real();
}

/// Trace out one subsystem of a bipartite operator on dims (d1, d2);
/// keep selects the surviving subsystem (1 or 2).
inline Operator partial_trace(const Operator& rho, int d1, int d2, int keep) {
    if (rho.dim() != d1 * d2 || !detail::supported_dim(d1) || !detail::supported_dim(d2)) {
        throw InvalidDimension("partial_trace: incompatible dimensions");
    }
    if (keep != 1 && keep != 2) {
        throw InvalidDimension("partial_trace: keep must be 1 or 2");
    }
    if (keep == 1) {
        Operator r(d1);
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d1; ++j) {
                cplx s = 0.0;
                for (int e = 0; e < d2; ++e) s += rho(i * d2 + e, j * d2 + e);
                r(i, j) = s;
            }
        return r;
    }
    Operator r(d2);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j) {
            cplx s = 0.0;
            for (int b = 0; b < d1; ++b) s += rho(b * d2 + i, b * d2 + j);
            r(i, j) = s;
        }
    return r;
}

/// Eigendecomposition of a Hermitian operator by cyclic complex Jacobi
/// rotations. Returns (eigenvalue, eigenvector) pairs sorted by descending
/// eigenvalue; eigenvectors are orthonormal. Dimensions here are at most 8,
/// where Jacobi converges in a handful of sweeps.
inline std::vector<std::pair<double, Ket>> eigh(const Operator& h) {
    if (!h.is_hermitian(1e-12)) {
        throw NotHermitian("eigh: input is not Hermitian within 1e-12");
    }
    const int n = h.dim();
    Operator a = 0.5 * (h + h.adjoint()); // symmetrize away representation noise
    Operator v = Operator::identity(n);

    const double scale = std::max(1.0, a.frobenius_norm());
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-15 * scale) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double b = std::abs(a(p, q));
                if (b <= 1e-18 * scale) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                const cplx phase = a(p, q) / b;
                const double alpha = a(p, p).real();
                const double gamma = a(q, q).real();
                const double tau = (gamma - alpha) / (2.0 * b);
                const double sgn = tau >= 0.0 ? 1.0 : -1.0;
                const double t = sgn / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // plane rotation W: W(p,p)=c, W(p,q)=s*phase,
                //                   W(q,p)=-s*conj(phase), W(q,q)=c
                const cplx wpq = s * phase;
                const cplx wqp = -s * std::conj(phase);
                // A <- W^dagger A W, applied as column then row updates
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * c + aiq * wqp;
                    a(i, q) = aip * wpq + aiq * c;
                }
                for (int j = 0; j < n; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + std::conj(wqp) * aqj;
                    a(q, j) = std::conj(wpq) * apj + c * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
                for (int i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * c + viq * wqp;
                    v(i, q) = vip * wpq + viq * c;
                }
            }
        }
    }

    std::vector<std::pair<double, Ket>> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Ket vec(n);
        for (int i = 0; i < n; ++i) vec[i] = v(i, j);
        out.emplace_back(a(j, j).real(), std::move(vec));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    return out;
}

} // namespace qkdprobe
