#ifndef CORNERLAYER_OPS_HPP
#define CORNERLAYER_OPS_HPP

#include "cornerlayer/angle.hpp"
#include "cornerlayer/elements.hpp"
#include "cornerlayer/poly.hpp"
#include "cornerlayer/solve1d.hpp"

namespace cornerlayer {

// ---- differential operators (each carries its grade shift) ---------------

// Laplacian on the sector, degree -2:
//   Delta Im[(az)^q (conj az)^k P] = 4 Im[(az)^{q-1} k (conj az)^{k-1} (qP + P')]
// holomorphic terms (k = 0) are harmonic.
template <class R>
OmegaElement<R> laplacian_omega(const AngleContext &ctx, const OmegaElement<R> &e) {
    OmegaElement<R> out;
    for (const auto &t : e) {
        if (t.k == 0) continue;
        Cx<R> qv(static_cast<R>(exp_value(ctx, t.q)));
        PolyT<R> p = (t.P * qv + t.P.derivative()) * Cx<R>(R(4) * static_cast<R>(t.k));
        if (!p.zero()) out.push_back(OmegaTerm<R>{exp_add_int(t.q, -1), t.k - 1, std::move(p)});
    }
    return normalize(ctx, std::move(out));
}

// d^2/dx^2 on the layer part, degree -2:
//   x^{e-2} (e(e-1) + (2e-1) d_T + d_T^2) Q(ln x, Y)
template <class R>
LambdaElement<R> dxx_lambda(const AngleContext &ctx, const LambdaElement<R> &e) {
    LambdaElement<R> out;
    for (const auto &t : e) {
        Cx<R> ev(static_cast<R>(exp_value(ctx, t.d)));
        PolyTY<R> q = t.Q * (ev * (ev - Cx<R>(1))) + t.Q.d_T() * (Cx<R>(2) * ev - Cx<R>(1)) + t.Q.d_T(2);
        if (!q.zero()) out.push_back(LambdaTerm<R>{exp_add_int(t.d, -2), std::move(q)});
    }
    return normalize(ctx, std::move(out));
}

// normal derivative of the sector part on the interface from above, degree -1:
//   x^{q+k-1} Re[alpha^{q-k} ((q-k) P + P')(ln x - i Theta)]
template <class R>
GammaElement<R> dy_gamma_plus(const AngleContext &ctx, const OmegaElement<R> &e) {
    GammaElement<R> out;
    for (const auto &t : e) {
        Exponent delta = exp_add_int(t.q, -t.k);
        Cx<R> dv(static_cast<R>(exp_value(ctx, delta)));
        PolyT<R> q = re_alpha_shift(ctx, delta, t.P * dv + t.P.derivative());
        if (!q.zero()) out.push_back(GammaTerm<R>{exp_add_int(t.grade(), -1), std::move(q)});
    }
    return normalize(ctx, std::move(out));
}

// normal derivative of the layer part on the interface from below, degree -1
// in x-scaling terms but degree 0 on the layer grading (d is kept)
template <class R>
GammaElement<R> dy_gamma_minus(const AngleContext &ctx, const LambdaElement<R> &e) {
    GammaElement<R> out;
    for (const auto &t : e) {
        PolyT<R> q = t.Q.d_Y().eval_at_Y(R(0));
        if (!q.zero()) out.push_back(GammaTerm<R>{t.d, std::move(q)});
    }
    return normalize(ctx, std::move(out));
}

// d^2/dY^2 on the layer part, degree 0
template <class R>
LambdaElement<R> dyy_lambda(const AngleContext &ctx, const LambdaElement<R> &e) {
    LambdaElement<R> out;
    for (const auto &t : e) {
        PolyTY<R> q = t.Q.d_Y().d_Y();
        if (!q.zero()) out.push_back(LambdaTerm<R>{t.d, std::move(q)});
    }
    return normalize(ctx, std::move(out));
}

// ---- resolvents (particular solutions, sigma-annihilated) ----------------

// Solve  Delta phi = psi in Omega,  dYY phi = 0 in Lambda,  dY phi|_{Y=0-} = 0,
// with phi continuous across the interface and sigma_d(phi) = 0 for every
// lattice d. Layer part is zero; sector part is phi1 - phi2 where phi1 lifts
// the source via one integration and phi2 is the harmonic correction that
// cancels the interface trace. Degree +2.
template <class R>
PiElement<R> r_delta(const AngleContext &ctx, const OmegaElement<R> &psi) {
    PiElement<R> out;
    for (const auto &t : psi) {
        Exponent q1 = exp_add_int(t.q, 1);
        long long k1 = t.k + 1;
        bool q1_zero = exp_is_zero(ctx, q1);
        Cx<R> c(R(4) * static_cast<R>(k1));
        // q1 = 0 leaves a free constant; it is pinned to P1(0) = 0 so that
        // every sigma_d of the output vanishes
        Cx<R> qv = q1_zero ? Cx<R>(0) : Cx<R>(static_cast<R>(exp_value(ctx, q1)));
        PolyT<R> p1 = ode_solve_first_order<R>(c, qv, t.P, q1_zero);
        OmegaTerm<R> phi1{q1, k1, p1};
        // harmonic lift of the interface trace of phi1
        Exponent lift = exp_add_int(t.grade(), 2); // q + k + 2
        PolyT<R> tr = im_alpha_shift(ctx, exp_add_int(q1, -k1), p1);
        PolyT<R> p2 = rim_solve(ctx, lift, tr);
        out.omega.push_back(std::move(phi1));
        if (!p2.zero()) out.omega.push_back(OmegaTerm<R>{lift, 0, p2 * Cx<R>(-1)});
    }
    return normalize(ctx, std::move(out));
}

// Solve  Delta phi = 0 in Omega,  dYY phi = psi in Lambda,  dY phi|_{Y=0-} = 0.
// The layer polynomial is the unique double antiderivative with the two side
// conditions; the sector part is its interface lift. Degree 0.
template <class R>
PiElement<R> r_dyy(const AngleContext &ctx, const LambdaElement<R> &psi) {
    PiElement<R> out;
    for (const auto &t : psi) {
        PolyTY<R> q1 = t.Q.antiderivative_Y(R(0));  // dY Qphi, vanishing at Y = 0
        PolyTY<R> qphi = q1.antiderivative_Y(R(-1)); // Qphi, vanishing at Y = -1
        PolyT<R> at0 = qphi.eval_at_Y(R(0));
        PolyT<R> pphi = rim_solve(ctx, t.d, at0);
        if (!qphi.zero()) out.lambda.push_back(LambdaTerm<R>{t.d, std::move(qphi)});
        if (!pphi.zero()) out.omega.push_back(OmegaTerm<R>{t.d, 0, std::move(pphi)});
    }
    return normalize(ctx, std::move(out));
}

// Solve  Delta phi = 0 in Omega,  dYY phi = 0 in Lambda,  dY phi|_{Y=0-} = psi:
// layer part psi(T) * (Y+1), sector part its interface lift. Degree 0.
template <class R>
PiElement<R> r_neumann(const AngleContext &ctx, const GammaElement<R> &psi) {
    PiElement<R> out;
    for (const auto &t : psi) {
        PolyTY<R> qphi = PolyTY<R>::from_T(t.Q) * (PolyTY<R>::monomial(0, 1) + PolyTY<R>::constant(Cx<R>(1)));
        PolyT<R> pphi = rim_solve(ctx, t.d, t.Q);
        if (!qphi.zero()) out.lambda.push_back(LambdaTerm<R>{t.d, std::move(qphi)});
        if (!pphi.zero()) out.omega.push_back(OmegaTerm<R>{t.d, 0, std::move(pphi)});
    }
    return normalize(ctx, std::move(out));
}

// Sector-only resolvent: Delta phi = psi in Omega with phi|_Gamma = 0,
// sigma-annihilated, degree +2.
template <class R>
OmegaElement<R> r_delta_omega(const AngleContext &ctx, const OmegaElement<R> &psi) {
    return r_delta(ctx, psi).omega;
}

// Sector-only harmonic lift: Delta phi = 0 with phi|_Gamma = psi, degree 0.
template <class R>
OmegaElement<R> r_dirichlet_omega(const AngleContext &ctx, const GammaElement<R> &psi) {
    OmegaElement<R> out;
    for (const auto &t : psi) {
        PolyT<R> p = rim_solve(ctx, t.d, t.Q);
        if (!p.zero()) out.push_back(OmegaTerm<R>{t.d, 0, std::move(p)});
    }
    return normalize(ctx, std::move(out));
}

} // namespace cornerlayer

#endif
