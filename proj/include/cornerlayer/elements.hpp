#ifndef CORNERLAYER_ELEMENTS_HPP
#define CORNERLAYER_ELEMENTS_HPP

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cornerlayer/angle.hpp"
#include "cornerlayer/poly.hpp"
#include "cornerlayer/solve1d.hpp"

namespace cornerlayer {

// Which complex kernel a sector term is built on. AlphaZ is the working
// family Im[(alpha z)^q ...]; PlainZ tags the second family Im[z^q z̄^k P(log z)]
// that a covered upper ray would need. The tag is a representation hook only:
// no operation accepts PlainZ terms.
enum class SectorBranch { AlphaZ, PlainZ };

// One canonical singularity term on the sector:
//   z -> Im[(alpha z)^q (conj(alpha z))^k P(log(alpha z))]
// with log(alpha z) = ln r + i(theta - Theta). Complex coefficients of P pass
// through the Im[] linearly (real and imaginary parts separately).
template <class R>
struct OmegaTerm {
    Exponent q;
    long long k = 0;
    PolyT<R> P;
    SectorBranch branch = SectorBranch::AlphaZ;

    Exponent grade() const { return exp_add_int(q, k); }
};

// (x, Y) -> x^d Q(ln x, Y) on the stretched layer; members of the layer space
// satisfy Q(T, -1) = 0, sources need not.
template <class R>
struct LambdaTerm {
    Exponent d;
    PolyTY<R> Q;
};

// x -> x^d Q(ln x) on the interface
template <class R>
struct GammaTerm {
    Exponent d;
    PolyT<R> Q;
};

template <class R>
using OmegaElement = std::vector<OmegaTerm<R>>;
template <class R>
using LambdaElement = std::vector<LambdaTerm<R>>;
template <class R>
using GammaElement = std::vector<GammaTerm<R>>;

// Element of A(Pi): sector part plus layer part, each canonical. Continuity
// across the interface is a checkable property, not a stored flag.
template <class R>
struct PiElement {
    OmegaElement<R> omega;
    LambdaElement<R> lambda;

    bool zero() const { return omega.empty() && lambda.empty(); }
};

// ---- canonical form ----------------------------------------------------

// Canonical form of a raw term list: one term per (q, k) slot, the direct-sum
// property enforced (q not natural, or q > k, or P(0) = 0), zero terms gone.
// Constants sitting at natural q <= k move to the (k, q) slot with a sign
// flip; at q = k they are the zero function and vanish.
template <class R>
OmegaElement<R> normalize(const AngleContext &ctx, OmegaElement<R> terms) {
    auto slot_less = [&](const OmegaTerm<R> &l, const OmegaTerm<R> &r) {
        int c = exp_compare(ctx, l.grade(), r.grade());
        if (c != 0) return c < 0;
        c = exp_compare(ctx, l.q, r.q);
        if (c != 0) return c < 0;
        return l.k < r.k;
    };
    auto slot_equal = [&](const OmegaTerm<R> &l, const OmegaTerm<R> &r) {
        return l.k == r.k && exp_equal(ctx, l.q, r.q);
    };
    auto merge = [&](OmegaElement<R> in) {
        std::sort(in.begin(), in.end(), slot_less);
        OmegaElement<R> out;
        for (auto &t : in) {
            if (t.branch != SectorBranch::AlphaZ)
                throw std::invalid_argument("second-family sector terms are a representation hook only");
            if (t.k < 0) throw std::invalid_argument("OmegaTerm: k must be a natural number");
            if (t.P.zero()) continue;
            if (!out.empty() && slot_equal(out.back(), t)) {
                out.back().P += t.P;
                if (out.back().P.zero()) out.pop_back();
            } else {
                out.push_back(std::move(t));
            }
        }
        return out;
    };

    OmegaElement<R> merged = merge(std::move(terms));
    OmegaElement<R> fixed;
    for (auto &t : merged) {
        auto nq = exp_as_natural(ctx, t.q);
        Cx<R> c0 = t.P.at_zero();
        if (nq.has_value() && *nq <= t.k && c0 != Cx<R>(0)) {
            t.P -= PolyT<R>::constant(c0);
            if (!t.P.zero()) fixed.push_back(t);
            if (*nq < t.k) {
                OmegaTerm<R> swapped;
                swapped.q = Exponent::lattice(Degree::integer(t.k));
                swapped.k = *nq;
                swapped.P = PolyT<R>::constant(-c0);
                fixed.push_back(std::move(swapped));
            }
            // q = k: the constant is the identically-zero function
        } else {
            fixed.push_back(std::move(t));
        }
    }
    return merge(std::move(fixed));
}

template <class R>
GammaElement<R> normalize(const AngleContext &ctx, GammaElement<R> terms) {
    auto less = [&](const GammaTerm<R> &l, const GammaTerm<R> &r) { return exp_compare(ctx, l.d, r.d) < 0; };
    std::sort(terms.begin(), terms.end(), less);
    GammaElement<R> out;
    for (auto &t : terms) {
        if (t.Q.zero()) continue;
        if (!out.empty() && exp_equal(ctx, out.back().d, t.d)) {
            out.back().Q += t.Q;
            if (out.back().Q.zero()) out.pop_back();
        } else {
            out.push_back(std::move(t));
        }
    }
    return out;
}

template <class R>
LambdaElement<R> normalize(const AngleContext &ctx, LambdaElement<R> terms) {
    auto less = [&](const LambdaTerm<R> &l, const LambdaTerm<R> &r) { return exp_compare(ctx, l.d, r.d) < 0; };
    std::sort(terms.begin(), terms.end(), less);
    LambdaElement<R> out;
    for (auto &t : terms) {
        if (t.Q.zero()) continue;
        if (!out.empty() && exp_equal(ctx, out.back().d, t.d)) {
            out.back().Q += t.Q;
            if (out.back().Q.zero()) out.pop_back();
        } else {
            out.push_back(std::move(t));
        }
    }
    return out;
}

template <class R>
PiElement<R> normalize(const AngleContext &ctx, PiElement<R> e) {
    return PiElement<R>{normalize(ctx, std::move(e.omega)), normalize(ctx, std::move(e.lambda))};
}

// ---- linear structure ---------------------------------------------------

template <class R>
PiElement<R> pi_add(const AngleContext &ctx, PiElement<R> a, const PiElement<R> &b) {
    a.omega.insert(a.omega.end(), b.omega.begin(), b.omega.end());
    a.lambda.insert(a.lambda.end(), b.lambda.begin(), b.lambda.end());
    return normalize(ctx, std::move(a));
}

template <class R>
PiElement<R> pi_scale(PiElement<R> a, Cx<R> s) {
    for (auto &t : a.omega) t.P *= s;
    for (auto &t : a.lambda) t.Q *= s;
    if (s == Cx<R>(0)) return PiElement<R>{};
    return a;
}

template <class R>
R pi_max_abs(const PiElement<R> &e) {
    R m = 0;
    for (const auto &t : e.omega) m = std::max(m, t.P.max_abs());
    for (const auto &t : e.lambda) m = std::max(m, t.Q.max_abs());
    return m;
}

// max coefficient magnitude of a - b over merged canonical slots
template <class R>
R pi_diff_norm(const AngleContext &ctx, const PiElement<R> &a, const PiElement<R> &b) {
    return pi_max_abs(pi_add(ctx, a, pi_scale(b, Cx<R>(-1))));
}

// ---- graded structure ---------------------------------------------------

// decomposition into homogeneous components on the lattice Z + (pi/Theta)Z;
// off-lattice exponents are rejected (the formal-series machinery lives on
// the lattice)
template <class R>
std::vector<std::pair<Degree, PiElement<R>>> lattice_grade_components(const AngleContext &ctx, const PiElement<R> &e) {
    std::vector<std::pair<Degree, PiElement<R>>> out;
    auto slot = [&](Degree g) -> PiElement<R> & {
        for (auto &kv : out)
            if (ctx.equal(kv.first, g)) return kv.second;
        out.emplace_back(g, PiElement<R>{});
        return out.back().second;
    };
    for (const auto &t : e.omega) {
        Exponent g = t.grade();
        if (!g.on_lattice) throw std::invalid_argument("grade decomposition: off-lattice exponent");
        slot(g.d).omega.push_back(t);
    }
    for (const auto &t : e.lambda) {
        if (!t.d.on_lattice) throw std::invalid_argument("grade decomposition: off-lattice exponent");
        slot(t.d.d).lambda.push_back(t);
    }
    std::sort(out.begin(), out.end(),
              [&](const auto &l, const auto &r) { return ctx.less(l.first, r.first); });
    return out;
}

// ---- the fundamental singularities and sigma_d --------------------------

// phi_d = Im[(alpha z)^d] on the sector, extended by 0 in the layer;
// harmonic, vanishing on both boundary rays.
template <class R>
PiElement<R> phi_d(const AngleContext &ctx, Degree d) {
    if (!ctx.in_pi_theta_star(d))
        throw std::invalid_argument("phi_d: d must lie in (pi/Theta)Z*");
    PiElement<R> e;
    e.omega.push_back(OmegaTerm<R>{Exponent::lattice(d), 0, PolyT<R>::constant(Cx<R>(1))});
    return e;
}

// sigma_d extracts P(0) from the unique (q = d, k = 0) slot of a canonical
// element; every other slot contributes exactly 0.
template <class R>
Cx<R> sigma_d(const AngleContext &ctx, const OmegaElement<R> &e, Degree d) {
    if (!ctx.in_pi_theta_star(d))
        throw std::invalid_argument("sigma_d: d must lie in (pi/Theta)Z*");
    Exponent target = Exponent::lattice(d);
    for (const auto &t : e) {
        if (t.k != 0) continue;
        if (exp_equal(ctx, t.q, target)) return t.P.at_zero();
    }
    return Cx<R>(0);
}

template <class R>
Cx<R> sigma_d(const AngleContext &ctx, const PiElement<R> &e, Degree d) {
    return sigma_d(ctx, e.omega, d);
}

// ---- traces --------------------------------------------------------------

// restriction of the sector part to the interface (theta = 0):
// x^{q+k} Im[alpha^{q-k} P(ln x - i Theta)], expanded exactly
template <class R>
GammaElement<R> trace_gamma(const AngleContext &ctx, const OmegaElement<R> &e) {
    GammaElement<R> out;
    for (const auto &t : e) {
        Exponent delta = exp_add_int(t.q, -t.k); // q - k
        PolyT<R> q = im_alpha_shift(ctx, delta, t.P);
        if (!q.zero()) out.push_back(GammaTerm<R>{t.grade(), std::move(q)});
    }
    return normalize(ctx, std::move(out));
}

// layer part restricted to Y = 0 (used for interface continuity checks)
template <class R>
GammaElement<R> lambda_at_zero(const AngleContext &ctx, const LambdaElement<R> &e) {
    GammaElement<R> out;
    for (const auto &t : e) {
        PolyT<R> q = t.Q.eval_at_Y(R(0));
        if (!q.zero()) out.push_back(GammaTerm<R>{t.d, std::move(q)});
    }
    return normalize(ctx, std::move(out));
}

// ---- pointwise evaluation with analytic derivatives ---------------------

namespace detail {

// d^{jr}_r d^{jt}_theta of r^e e^{i delta (theta-Theta)} K(ln r + i(theta-Theta)),
// reported as (final exponent, final K); linear in K's coefficients
template <class R>
std::pair<R, PolyT<R>> omega_kernel_derive(R e, R delta, PolyT<R> K, unsigned jr, unsigned jt) {
    for (unsigned i = 0; i < jt; ++i) {
        PolyT<R> next = (K * Cx<R>(delta) + K.derivative()) * Cx<R>(R(0), R(1));
        K = std::move(next);
    }
    for (unsigned i = 0; i < jr; ++i) {
        PolyT<R> next = K * Cx<R>(e) + K.derivative();
        K = std::move(next);
        e -= R(1);
    }
    return {e, std::move(K)};
}

template <class R>
Cx<R> omega_kernel_value(const AngleContext &ctx, R qv, R kv, const PolyT<R> &P, R r, R theta, unsigned jr,
                         unsigned jt) {
    R th = theta_as<R>(ctx);
    auto [e, K] = omega_kernel_derive<R>(qv + kv, qv - kv, P, jr, jt);
    Cx<R> L(std::log(r), theta - th);
    Cx<R> phase = std::exp(Cx<R>(R(0), (qv - kv) * (theta - th)));
    return std::pow(r, e) * phase * K.eval(L);
}

} // namespace detail

// value of d^{jr}_r d^{jt}_theta at (r, theta); the complex-linear Im[]
// convention is applied to the original coefficients of P
template <class R>
Cx<R> eval_omega(const AngleContext &ctx, const OmegaElement<R> &e, R r, R theta, unsigned jr = 0, unsigned jt = 0) {
    if (!(r > R(0))) throw std::domain_error("eval: r must be positive");
    Cx<R> acc(0);
    for (const auto &t : e) {
        R qv = static_cast<R>(exp_value(ctx, t.q));
        R kv = static_cast<R>(t.k);
        Cx<R> w1 = detail::omega_kernel_value(ctx, qv, kv, t.P, r, theta, jr, jt);
        Cx<R> w2 = detail::omega_kernel_value(ctx, qv, kv, t.P.conj(), r, theta, jr, jt);
        Cx<R> f_re = (w1 + w2) / Cx<R>(2);
        Cx<R> f_im = (w1 - w2) / Cx<R>(R(0), R(2));
        acc += Cx<R>(f_re.imag(), f_im.imag());
    }
    return acc;
}

template <class R>
Cx<R> eval_lambda(const AngleContext &ctx, const LambdaElement<R> &e, R x, R Y, unsigned jx = 0, unsigned jy = 0) {
    if (!(x > R(0))) throw std::domain_error("eval: x must be positive");
    Cx<R> acc(0);
    for (const auto &t : e) {
        R ev = static_cast<R>(exp_value(ctx, t.d));
        PolyTY<R> W = t.Q;
        for (unsigned i = 0; i < jy; ++i) W = W.d_Y();
        for (unsigned i = 0; i < jx; ++i) {
            W = W * Cx<R>(ev) + W.d_T();
            ev -= R(1);
        }
        acc += std::pow(x, ev) * W.eval(Cx<R>(std::log(x)), Cx<R>(Y));
    }
    return acc;
}

template <class R>
Cx<R> eval_gamma(const AngleContext &ctx, const GammaElement<R> &e, R x, unsigned jx = 0) {
    if (!(x > R(0))) throw std::domain_error("eval: x must be positive");
    Cx<R> acc(0);
    for (const auto &t : e) {
        R ev = static_cast<R>(exp_value(ctx, t.d));
        PolyT<R> W = t.Q;
        for (unsigned i = 0; i < jx; ++i) {
            W = W * Cx<R>(ev) + W.derivative();
            ev -= R(1);
        }
        acc += std::pow(x, ev) * W.eval(Cx<R>(std::log(x)));
    }
    return acc;
}

// evaluation entry point matching the per-region signature
enum class Region { Omega, Lambda };

template <class R>
Cx<R> eval(const AngleContext &ctx, const PiElement<R> &e, Region region, R c1, R c2, unsigned j1 = 0,
           unsigned j2 = 0) {
    if (region == Region::Omega) return eval_omega(ctx, e.omega, c1, c2, j1, j2);
    return eval_lambda(ctx, e.lambda, c1, c2, j1, j2);
}

// crude magnitude scale of an element near radius r (for relative boundary
// checks): sum of |coeff| * r^grade * (1+|ln r|)^degT
template <class R>
R eval_scale(const AngleContext &ctx, const PiElement<R> &e, R r) {
    R lr = std::abs(std::log(r));
    R acc = 0;
    for (const auto &t : e.omega) {
        R g = static_cast<R>(exp_value(ctx, t.grade()));
        R mass = 0, pw = 1;
        for (const auto &c : t.P.coeffs()) {
            mass += std::abs(c) * pw;
            pw *= (R(1) + lr + theta_as<R>(ctx));
        }
        acc += mass * std::pow(r, g);
    }
    for (const auto &t : e.lambda) {
        R g = static_cast<R>(exp_value(ctx, t.d));
        R mass = 0;
        for (const auto &[k, v] : t.Q.terms()) mass += std::abs(v) * std::pow(R(1) + lr, static_cast<R>(k.first));
        acc += mass * std::pow(r, g);
    }
    return acc;
}

} // namespace cornerlayer

#endif
