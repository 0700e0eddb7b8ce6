#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>

namespace twochan {

using cplx = std::complex<double>;

/// Two-component complex state vector in the unmixed channel basis.
struct Vec2 {
    cplx v0{};
    cplx v1{};

    friend Vec2 operator*(cplx s, const Vec2& v) { return {s * v.v0, s * v.v1}; }
    friend Vec2 operator-(const Vec2& v) { return {-v.v0, -v.v1}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Bilinear (c-) product u^T w, no conjugation. The natural pairing for
/// eigenvectors of complex-symmetric operators.
inline cplx bilinear_dot(const Vec2& u, const Vec2& w) {
    return u.v0 * w.v0 + u.v1 * w.v1;
}

/// Hermitian product <u|w> = conj(u)^T w.
inline cplx hermitian_dot(const Vec2& u, const Vec2& w) {
    return std::conj(u.v0) * w.v0 + std::conj(u.v1) * w.v1;
}

/// Squared Euclidean norm |v0|^2 + |v1|^2.
inline double norm2(const Vec2& v) { return std::norm(v.v0) + std::norm(v.v1); }

/// A complex-symmetric 2x2 matrix. Symmetry is structural: the single `off`
/// field is both off-diagonal entries, so no transpose mismatch can exist.
struct Complex2x2Symmetric {
    cplx d11{}; ///< diagonal entry 1
    cplx d22{}; ///< diagonal entry 2
    cplx off{}; ///< shared off-diagonal entry

    Vec2 apply(const Vec2& v) const {
        return {d11 * v.v0 + off * v.v1, off * v.v0 + d22 * v.v1};
    }
    cplx trace() const { return d11 + d22; }
    cplx determinant() const { return d11 * d22 - off * off; }
    double max_modulus() const {
        return std::max({std::abs(d11), std::abs(d22), std::abs(off)});
    }

    friend bool operator==(const Complex2x2Symmetric&, const Complex2x2Symmetric&) = default;
};

/// Discriminant D = ((d11 - d22)/2)^2 + off^2 of the closed-form solve.
/// The two eigenvalues coalesce (exceptional point) exactly when D = 0.
struct Discriminant {
    cplx value{};
    double modulus{};
};

inline Discriminant discriminant(const Complex2x2Symmetric& m) {
    const cplx half_diff = 0.5 * (m.d11 - m.d22);
    const cplx d = half_diff * half_diff + m.off * m.off;
    return {d, std::abs(d)};
}

/// One eigenpair. `c_norm_ok` is false exactly when Phi^T Phi vanished and
/// c-normalization was impossible; `is_ep_member` marks a coalesced pair.
struct EigenSolution {
    cplx value{};
    Vec2 vector{};
    bool c_norm_ok = false;
    bool is_ep_member = false;
};

inline constexpr double default_ep_tol = 1e-10;
inline constexpr double self_orthogonal_rel_tol = 1e-14;

/// Scale factor making the EP tolerance relative: |D| <= ep_tol * ep_scale.
inline double ep_scale(const Complex2x2Symmetric& m) {
    return std::max({1.0, std::norm(m.d11), std::norm(m.d22), std::norm(m.off)});
}

namespace detail {

/// Deterministic overall sign: the component of largest modulus (first on a
/// tie) gets an argument in (-pi/2, pi/2].
inline Vec2 fix_phase(Vec2 w) {
    const cplx& lead = std::abs(w.v0) >= std::abs(w.v1) ? w.v0 : w.v1;
    if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0)) return -w;
    return w;
}

inline Vec2 unit_euclidean(const Vec2& v) {
    const double n = std::sqrt(norm2(v));
    return fix_phase({v.v0 / n, v.v1 / n});
}

/// Raw eigenvector of m for eigenvalue lam, from whichever of the two row
/// candidates is better conditioned. Falls back to e1 for a scalar matrix.
inline Vec2 raw_eigenvector(const Complex2x2Symmetric& m, cplx lam) {
    const Vec2 c1{m.off, lam - m.d11};
    const Vec2 c2{lam - m.d22, m.off};
    Vec2 v = norm2(c1) >= norm2(c2) ? c1 : c2;
    if (norm2(v) == 0.0) v = {1.0, 0.0};
    return v;
}

inline bool eig_less(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace detail

/// c-normalization: w = v / sqrt(v^T v), so that w^T w = 1. Returns nullopt
/// for self-orthogonal input (|v^T v| <= 1e-14 * v^dag v), the EP-limit case.
/// The overall sign follows the fix_phase convention above.
inline std::optional<Vec2> c_normalize(const Vec2& v) {
    const cplx bt = bilinear_dot(v, v);
    if (std::abs(bt) <= self_orthogonal_rel_tol * norm2(v)) return std::nullopt;
    const cplx s = std::sqrt(bt);
    return detail::fix_phase({v.v0 / s, v.v1 / s});
}

/// Closed-form eigendecomposition of a complex-symmetric 2x2 matrix.
///
/// Eigenvalues are (d11+d22)/2 +- sqrt(D), sorted by ascending real part,
/// ties by ascending imaginary part. Eigenvectors are c-normalized; the left
/// eigenvector is the conjugate of the right one and is never stored.
///
/// Total function: degeneracy is signalled via flags, never via failure.
/// When |D| <= ep_tol * ep_scale(m) both solutions carry is_ep_member = true,
/// share the mean eigenvalue, and the returned vectors realize the EP limit
/// relation Phi_1 = i * Phi_2 (both self-orthogonal, c_norm_ok = false).
inline std::array<EigenSolution, 2> eigensolve(const Complex2x2Symmetric& m,
                                               double ep_tol = default_ep_tol) {
    const cplx half_sum = 0.5 * (m.d11 + m.d22);
    const Discriminant disc = discriminant(m);

    if (disc.modulus <= ep_tol * ep_scale(m)) {
        const Vec2 v = detail::unit_euclidean(detail::raw_eigenvector(m, half_sum));
        const Vec2 iv{cplx(0.0, 1.0) * v.v0, cplx(0.0, 1.0) * v.v1};
        return {EigenSolution{half_sum, iv, false, true},
                EigenSolution{half_sum, v, false, true}};
    }

    if (m.off == cplx(0.0)) {
        // unmixed block: exact diagonal eigenpairs, basis eigenvectors
        EigenSolution s1{m.d11, {1.0, 0.0}, true, false};
        EigenSolution s2{m.d22, {0.0, 1.0}, true, false};
        if (detail::eig_less(s2.value, s1.value)) std::swap(s1, s2);
        return {s1, s2};
    }

    const cplx root = std::sqrt(disc.value);
    cplx lam_lo = half_sum + root;
    cplx lam_hi = half_sum - root;
    if (detail::eig_less(lam_hi, lam_lo)) std::swap(lam_lo, lam_hi);

    std::array<EigenSolution, 2> out{};
    const cplx lams[2] = {lam_lo, lam_hi};
    for (int i = 0; i < 2; ++i) {
        const Vec2 raw = detail::raw_eigenvector(m, lams[i]);
        EigenSolution sol;
        sol.value = lams[i];
        if (auto cn = c_normalize(raw)) {
            sol.vector = *cn;
            sol.c_norm_ok = true;
        } else {
            // just outside the EP tolerance but numerically self-orthogonal
            sol.vector = detail::unit_euclidean(raw);
            sol.c_norm_ok = false;
        }
        out[i] = sol;
    }
    return out;
}

/// Independent verification oracle: roots of det(m - lambda I) by the
/// quadratic formula on the expanded characteristic polynomial
/// lambda^2 - tr(m) lambda + det(m). Shares nothing with eigensolve's
/// half-difference route. Sorted like eigensolve.
inline std::array<cplx, 2> oracle_eigenvalues(const Complex2x2Symmetric& m) {
    const cplx tr = m.trace();
    const cplx det = m.determinant();
    const cplx root = std::sqrt(tr * tr - 4.0 * det);
    cplx r0 = 0.5 * (tr + root);
    cplx r1 = 0.5 * (tr - root);
    if (detail::eig_less(r1, r0)) std::swap(r0, r1);
    return {r0, r1};
}

} // namespace twochan
