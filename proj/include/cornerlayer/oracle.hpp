#ifndef CORNERLAYER_ORACLE_HPP
#define CORNERLAYER_ORACLE_HPP

#include <cmath>
#include <vector>

#include "cornerlayer/config.hpp"
#include "cornerlayer/ops.hpp"
#include "cornerlayer/series.hpp"

// Deliberately simple verification paths, sharing only the type layer with
// the fast engine.

namespace cornerlayer {

// Literal sum over all operator words of length <= max_len applied to the
// seed, kept within the level cap. Level pruning is exact: once a word leaves
// the cap it cannot come back (every operator raises the level).
template <class R>
GradedSeries<R> enumerate_words(const std::vector<EpsOperator<R>> &ops, const GradedSeries<R> &seed,
                                int max_len, Direction v, Degree cap) {
    const AngleContext &ctx = seed.ctx();
    struct Item {
        Degree p, d;
        int l;
        PiElement<R> e;
    };
    GradedSeries<R> out(seed.ctx_ptr(), seed.orientation(), seed.ansatz_lattice());
    std::vector<Item> frontier;
    for (const auto &[key, cell] : seed.cells())
        for (int l = 0; l <= cell.max_l(); ++l) {
            const PiElement<R> &e = cell.by_l[static_cast<std::size_t>(l)];
            if (e.zero()) continue;
            if (ctx.compare(v.level(key.first, key.second), cap) > 0) continue;
            frontier.push_back(Item{key.first, key.second, l, e});
            out.add(key.first, key.second, l, e);
        }
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Item> next;
        for (const auto &item : frontier) {
            for (const auto &f : ops) {
                Degree p = item.p + f.deg_eps, d = item.d + f.deg_A;
                if (ctx.compare(v.level(p, d), cap) > 0) continue;
                PiElement<R> e = f.action(item.e);
                if (e.zero()) continue;
                out.add(p, d, item.l, e);
                next.push_back(Item{p, d, item.l, std::move(e)});
            }
        }
        frontier = std::move(next);
    }
    out.mark_complete(v, cap);
    return out;
}

// first partial derivatives by central differences against the analytic path
template <class R>
struct FdReport {
    R max_rel_err = 0;
    std::size_t samples = 0;
};

template <class R>
FdReport<R> fd_check(const AngleContext &ctx, const PiElement<R> &e,
                     const std::vector<std::pair<R, R>> &omega_points,
                     const std::vector<std::pair<R, R>> &lambda_points, R h) {
    FdReport<R> rep;
    auto account = [&](Cx<R> fd, Cx<R> an) {
        R denom = std::max({R(1), std::abs(an), std::abs(fd)});
        rep.max_rel_err = std::max(rep.max_rel_err, std::abs(fd - an) / denom);
        ++rep.samples;
    };
    for (auto [r, th] : omega_points) {
        account((eval_omega(ctx, e.omega, r + h, th) - eval_omega(ctx, e.omega, r - h, th)) / Cx<R>(2 * h),
                eval_omega(ctx, e.omega, r, th, 1, 0));
        account((eval_omega(ctx, e.omega, r, th + h) - eval_omega(ctx, e.omega, r, th - h)) / Cx<R>(2 * h),
                eval_omega(ctx, e.omega, r, th, 0, 1));
    }
    for (auto [x, Y] : lambda_points) {
        account((eval_lambda(ctx, e.lambda, x + h, Y) - eval_lambda(ctx, e.lambda, x - h, Y)) / Cx<R>(2 * h),
                eval_lambda(ctx, e.lambda, x, Y, 1, 0));
        account((eval_lambda(ctx, e.lambda, x, Y + h) - eval_lambda(ctx, e.lambda, x, Y - h)) / Cx<R>(2 * h),
                eval_lambda(ctx, e.lambda, x, Y, 0, 1));
    }
    return rep;
}

// Helmholtz defect of a truncated sector expansion, measured on dyadic radii.
struct ResidualReport {
    std::vector<double> radii;
    std::vector<double> norms;
    double slope = 0.0;
    double expected_slope = 0.0;
    bool pass = false;
};

// The (p0, l=0) slice of the series is truncated at grade <= D; its Helmholtz
// defect is exactly the image of the dropped tail, so the defect norm decays
// like r^(min defect grade). The expected slope is read off the defect's own
// representation, the fitted slope from a least-squares line over the radii.
template <class R>
ResidualReport residual_slope(const ProblemConfig<R> &cfg, const GradedSeries<R> &series, Degree p0, Degree D,
                              const std::vector<double> &radii, int theta_samples = 24) {
    if (radii.size() < 5) throw std::invalid_argument("residual_slope: at least 5 radii required");
    const AngleContext &ctx = *cfg.ctx;
    // assemble the truncated slice
    OmegaElement<R> u;
    for (const auto &[key, cell] : series.cells()) {
        if (!ctx.equal(key.first, p0)) continue;
        if (ctx.compare(key.second, D) > 0) continue;
        if (cell.max_l() >= 0)
            for (const auto &t : cell.by_l[0].omega) u.push_back(t);
    }
    u = normalize(ctx, std::move(u));
    // symbolic defect mu0 Delta u + omega^2 rho0 u
    OmegaElement<R> defect = laplacian_omega(ctx, u);
    for (auto &t : defect) t.P *= Cx<R>(cfg.mu0);
    for (const auto &t : u) {
        OmegaTerm<R> w = t;
        w.P *= cfg.omega * cfg.omega * Cx<R>(cfg.rho0);
        defect.push_back(std::move(w));
    }
    defect = normalize(ctx, std::move(defect));

    ResidualReport rep;
    rep.radii = radii;
    if (defect.empty()) {
        rep.pass = true; // zero series: zero residual
        return rep;
    }
    // expected slope: smallest grade carrying real mass in the defect (interior
    // grades cancel exactly up to roundoff and must not pollute the detection)
    R mass = 0;
    for (const auto &t : defect) mass = std::max(mass, t.P.max_abs());
    bool first = true;
    Exponent gmin;
    for (const auto &t : defect) {
        if (t.P.max_abs() <= R(1e-10) * mass) continue;
        Exponent g = t.grade();
        if (first || exp_compare(ctx, g, gmin) < 0) {
            gmin = g;
            first = false;
        }
    }
    rep.expected_slope = first ? 0.0 : exp_value(ctx, gmin);

    double th0 = ctx.theta();
    for (double r : radii) {
        double nrm = 0.0;
        for (int i = 1; i < theta_samples; ++i) {
            double th = th0 * static_cast<double>(i) / static_cast<double>(theta_samples);
            nrm = std::max(nrm, static_cast<double>(std::abs(
                                    eval_omega(ctx, defect, static_cast<R>(r), static_cast<R>(th)))));
        }
        rep.norms.push_back(nrm);
    }
    // least-squares slope of ln(norm) against ln(r)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = radii.size();
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::log(radii[i]);
        double y = std::log(std::max(rep.norms[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = static_cast<double>(n) * sxx - sx * sx;
    rep.slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
    rep.pass = std::fabs(rep.slope - rep.expected_slope) <= cfg.data.tol.slope;
    return rep;
}

} // namespace cornerlayer

#endif
