#ifndef CORNERLAYER_SOLVE1D_HPP
#define CORNERLAYER_SOLVE1D_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cornerlayer/angle.hpp"
#include "cornerlayer/poly.hpp"

namespace cornerlayer {

template <class R>
R theta_as(const AngleContext &ctx) {
    constexpr long double pi_ld = 3.14159265358979323846264338327950288L;
    if (ctx.rational())
        return static_cast<R>(pi_ld) * static_cast<R>(ctx.theta_num()) / static_cast<R>(ctx.theta_den());
    return static_cast<R>(ctx.theta());
}

// alpha^e with alpha = e^{-i Theta}; exact +-1 on the (pi/Theta)Z lattice
template <class R>
Cx<R> alpha_pow(const AngleContext &ctx, const Exponent &e) {
    R th = theta_as<R>(ctx);
    if (e.on_lattice) {
        auto m = ctx.as_pi_theta_multiple(e.d);
        if (m.has_value()) return Cx<R>(((*m % 2) == 0) ? R(1) : R(-1), R(0));
        // e = a + b*(pi/Theta): alpha^e = e^{-i a Theta} * (-1)^b
        R phase = static_cast<R>(e.d.a) * th;
        Cx<R> base(std::cos(phase), -std::sin(phase));
        if ((e.d.b % 2) != 0) base = -base;
        return base;
    }
    R phase = static_cast<R>(e.x) * th;
    return Cx<R>(std::cos(phase), -std::sin(phase));
}

template <class R>
Cx<R> alpha_pow(const AngleContext &ctx, Degree d) {
    return alpha_pow<R>(ctx, Exponent::lattice(d));
}

// Coefficient-wise Im of alpha^delta * P(T - i*Theta) for real P, extended
// complex-linearly in P's coefficients.
template <class R>
PolyT<R> im_alpha_shift(const AngleContext &ctx, const Exponent &delta, const PolyT<R> &p) {
    R th = theta_as<R>(ctx);
    Cx<R> a = alpha_pow<R>(ctx, delta);
    auto core = [&](const PolyT<R> &real_poly) {
        PolyT<R> shifted = real_poly.shifted(Cx<R>(R(0), -th)) * a;
        return shifted.imag_part();
    };
    return core(p.real_part()) + core(p.imag_part()) * Cx<R>(R(0), R(1));
}

// Per-coefficient accumulation bound of im_alpha_shift: the l1 mass that the
// expansion of alpha^delta P(T - i*Theta) piles onto each power of T. The
// round-trip tolerance is measured against this scale because the monomial
// basis change is ill-conditioned at higher degrees.
template <class R>
std::vector<R> im_alpha_shift_scale(const AngleContext &ctx, const PolyT<R> &p) {
    R th = std::abs(theta_as<R>(ctx));
    int n = p.degree();
    std::vector<R> scale(n >= 0 ? static_cast<std::size_t>(n) + 1 : 0, R(0));
    for (int m = 0; m <= n; ++m) {
        R pm = std::abs(p.coeff(static_cast<std::size_t>(m)).real()) +
               std::abs(p.coeff(static_cast<std::size_t>(m)).imag());
        if (pm == R(0)) continue;
        R binom = R(1); // C(m, j) * th^(m-j), built downward from j = m
        R pw = R(1);
        for (int j = m; j >= 0; --j) {
            scale[static_cast<std::size_t>(j)] += pm * binom * pw;
            if (j > 0) {
                binom = binom * static_cast<R>(j) / static_cast<R>(m - j + 1);
                pw *= th;
            }
        }
    }
    return scale;
}

// Same with Re in place of Im.
template <class R>
PolyT<R> re_alpha_shift(const AngleContext &ctx, const Exponent &delta, const PolyT<R> &p) {
    R th = theta_as<R>(ctx);
    Cx<R> a = alpha_pow<R>(ctx, delta);
    auto core = [&](const PolyT<R> &real_poly) {
        PolyT<R> shifted = real_poly.shifted(Cx<R>(R(0), -th)) * a;
        return shifted.real_part();
    };
    return core(p.real_part()) + core(p.imag_part()) * Cx<R>(R(0), R(1));
}

namespace detail {

// One triangular back-substitution pass for Im[alpha^d P(T - i*Theta)] = Q.
template <class R>
PolyT<R> rim_raw(const AngleContext &ctx, const Exponent &d, const PolyT<R> &q) {
    if (q.zero()) return PolyT<R>();
    R th = theta_as<R>(ctx);
    PolyT<R> lin(std::vector<Cx<R>>{Cx<R>(R(0), -th), Cx<R>(R(1), R(0))}); // T - i*Theta
    Cx<R> a = alpha_pow<R>(ctx, d);
    auto image_of_monomial = [&](int m) {
        PolyT<R> pw = PolyT<R>::constant(Cx<R>(R(1)));
        for (int i = 0; i < m; ++i) pw = pw * lin;
        return (pw * a).imag_part();
    };

    PolyT<R> residual = q;
    PolyT<R> p;
    if (!exp_in_pi_theta(ctx, d)) {
        R im_a = a.imag();
        for (int m = q.degree(); m >= 0; --m) {
            Cx<R> coeff = residual.coeff(static_cast<std::size_t>(m)) / Cx<R>(im_a);
            if (coeff != Cx<R>(0)) {
                p += PolyT<R>::monomial(static_cast<std::size_t>(m), coeff);
                residual -= image_of_monomial(m) * coeff;
            }
        }
        return p;
    }
    // alpha^d = s = +-1: images drop one degree; unique solution with P(0) = 0
    R s = a.real();
    for (int j = q.degree() + 1; j >= 1; --j) {
        Cx<R> lead = Cx<R>(-s * static_cast<R>(j) * th);
        Cx<R> coeff = residual.coeff(static_cast<std::size_t>(j - 1)) / lead;
        if (coeff != Cx<R>(0)) {
            p += PolyT<R>::monomial(static_cast<std::size_t>(j), coeff);
            residual -= image_of_monomial(j) * coeff;
        }
    }
    return p;
}

// Back-substitution loses digits to binomial growth at higher degrees, so the
// result is polished by iterative refinement against the forward map.
template <class R>
PolyT<R> rim_solve_real(const AngleContext &ctx, const Exponent &d, const PolyT<R> &q) {
    PolyT<R> p = rim_raw(ctx, d, q);
    const R eps = std::numeric_limits<R>::epsilon();
    for (int iter = 0; iter < 4; ++iter) {
        PolyT<R> res = q - im_alpha_shift(ctx, d, p);
        if (res.max_abs() <= R(16) * eps * (R(1) + q.max_abs())) break;
        p += rim_raw(ctx, d, res);
    }
    return p;
}

} // namespace detail

// Unique P with Im[alpha^d P(T-i*Theta)] = Q; on the (pi/Theta)Z lattice the
// solution is pinned by P(0) = 0 and gains one degree. Complex Q is handled
// on real and imaginary parts separately.
template <class R>
PolyT<R> rim_solve(const AngleContext &ctx, const Exponent &d, const PolyT<R> &q) {
    return detail::rim_solve_real(ctx, d, q.real_part()) +
           detail::rim_solve_real(ctx, d, q.imag_part()) * Cx<R>(R(0), R(1));
}

template <class R>
PolyT<R> rim_solve(const AngleContext &ctx, Degree d, const PolyT<R> &q) {
    return rim_solve(ctx, Exponent::lattice(d), q);
}

// Solve c*(q*P + P') = rhs in polynomial space by downward recurrence.
// q = 0 leaves the constant term free; the paper's choice P(0) = 0 is taken
// when fix_constant_at_zero is set, otherwise the call is rejected.
template <class R>
PolyT<R> ode_solve_first_order(Cx<R> c, Cx<R> q, const PolyT<R> &rhs, bool fix_constant_at_zero) {
    if (c == Cx<R>(0)) throw std::invalid_argument("ode_solve_first_order: c must be nonzero");
    if (q == Cx<R>(0)) {
        if (!fix_constant_at_zero)
            throw std::invalid_argument("ode_solve_first_order: q = 0 solution is ambiguous without fixing P(0)");
        PolyT<R> p = rhs.antiderivative();
        p *= Cx<R>(R(1)) / c;
        return p;
    }
    int n = rhs.degree();
    if (n < 0) return PolyT<R>();
    std::vector<Cx<R>> pc(static_cast<std::size_t>(n) + 1, Cx<R>(0));
    Cx<R> above(0);
    for (int m = n; m >= 0; --m) {
        // c*(q*p_m + (m+1)*p_{m+1}) = rhs_m
        pc[static_cast<std::size_t>(m)] =
            (rhs.coeff(static_cast<std::size_t>(m)) / c - Cx<R>(static_cast<R>(m + 1)) * above) / q;
        above = pc[static_cast<std::size_t>(m)];
    }
    return PolyT<R>(std::move(pc));
}

} // namespace cornerlayer

#endif
