#ifndef CORNERLAYER_CHECK_HPP
#define CORNERLAYER_CHECK_HPP

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "cornerlayer/io.hpp"
#include "cornerlayer/matching.hpp"
#include "cornerlayer/oracle.hpp"

// The acceptance suite: one entry per criterion, each pinned to the
// tolerances of the configuration record. cmd_check and the acceptance test
// binary both run through here.

namespace cornerlayer {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double ms = 0.0;
};

namespace checkdetail {

using C = Cx<double>;

inline PolyT<double> rand_poly(std::mt19937_64 &rng, int max_deg) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> dd(0, max_deg);
    int deg = dd(rng);
    std::vector<C> c(static_cast<std::size_t>(deg) + 1);
    for (auto &v : c) v = C(u(rng), u(rng));
    if (c.back() == C(0)) c.back() = C(0.6, -0.1);
    return PolyT<double>(std::move(c));
}

inline OmegaElement<double> rand_omega(const AngleContext &ctx, std::mt19937_64 &rng, int nterms, int max_deg = 3) {
    std::uniform_int_distribution<long long> qa(-3, 3), qb(-2, 2), kk(0, 3);
    OmegaElement<double> raw;
    for (int i = 0; i < nterms; ++i)
        raw.push_back(OmegaTerm<double>{Exponent::lattice(Degree{qa(rng), qb(rng)}), kk(rng), rand_poly(rng, max_deg)});
    return normalize(ctx, std::move(raw));
}

inline LambdaElement<double> rand_lambda_source(const AngleContext &ctx, std::mt19937_64 &rng, int nterms) {
    std::uniform_int_distribution<long long> da(-3, 3), db(-2, 2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    LambdaElement<double> raw;
    for (int i = 0; i < nterms; ++i) {
        PolyTY<double> q;
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 3; ++b) q.add(a, b, C(u(rng), u(rng)));
        raw.push_back(LambdaTerm<double>{Exponent::lattice(Degree{da(rng), db(rng)}), std::move(q)});
    }
    return normalize(ctx, std::move(raw));
}

inline LambdaElement<double> rand_lambda_member(const AngleContext &ctx, std::mt19937_64 &rng, int nterms) {
    LambdaElement<double> src = rand_lambda_source(ctx, rng, nterms);
    LambdaElement<double> out;
    for (auto &t : src) {
        PolyTY<double> q = t.Q;
        q -= PolyTY<double>::from_T(q.eval_at_Y(-1.0));
        if (!q.zero()) out.push_back(LambdaTerm<double>{t.d, std::move(q)});
    }
    return normalize(ctx, std::move(out));
}

inline GammaElement<double> rand_gamma(const AngleContext &ctx, std::mt19937_64 &rng, int nterms) {
    std::uniform_int_distribution<long long> da(-3, 3), db(-2, 2);
    GammaElement<double> raw;
    for (int i = 0; i < nterms; ++i)
        raw.push_back(GammaTerm<double>{Exponent::lattice(Degree{da(rng), db(rng)}), rand_poly(rng, 3)});
    return normalize(ctx, std::move(raw));
}

inline double omega_diff(const AngleContext &ctx, const OmegaElement<double> &a, const OmegaElement<double> &b) {
    return pi_diff_norm(ctx, PiElement<double>{a, {}}, PiElement<double>{b, {}});
}

inline double omega_abs(const OmegaElement<double> &e) {
    double m = 0;
    for (const auto &t : e) m = std::max(m, t.P.max_abs());
    return m;
}

inline ProblemConfig<double> config_for(const ConfigData &base, const char *theta) {
    ConfigData c = base;
    c.theta = parse_theta(theta);
    return ProblemConfig<double>::make(c);
}

inline std::vector<AngleContext> standard_contexts() {
    return {AngleContext::rational_pi(1, 2), AngleContext::rational_pi(2, 3), AngleContext::radians(2.0)};
}

} // namespace checkdetail

inline std::vector<CheckResult> run_acceptance(const std::string &suite, const ConfigData &base) {
    using namespace checkdetail;
    base.tol.validate();
    std::vector<CheckResult> results;
    auto want = [&](const char *name) { return suite == "all" || suite == name; };
    auto record = [&](const char *name, auto &&body) {
        if (!want(name)) return;
        CheckResult r;
        r.name = name;
        auto t0 = std::chrono::steady_clock::now();
        try {
            body(r);
        } catch (const std::exception &e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        results.push_back(std::move(r));
    };

    // 1. sigma-duality: sigma_d(phi_q) = delta_{d,q}, exact-structural
    record("sigma", [&](CheckResult &r) {
        double worst = 0.0;
        for (const auto &ctx : standard_contexts()) {
            for (long long m = -3; m <= 3; ++m) {
                if (m == 0) continue;
                auto phi = phi_d<double>(ctx, Degree::pi_over_theta(m));
                for (long long q = -3; q <= 3; ++q) {
                    if (q == 0) continue;
                    C s = sigma_d(ctx, phi, Degree::pi_over_theta(q));
                    worst = std::max(worst, std::abs(s - (q == m ? C(1) : C(0))));
                }
            }
        }
        r.pass = worst == 0.0;
        r.detail = "max deviation " + fmt_real(worst) + " (required: exactly 0)";
    });

    // 2. RIm round-trip, both lattice branches, backward-relative
    record("rim", [&](CheckResult &r) {
        std::mt19937_64 rng(1234);
        double worst = 0.0;
        for (const auto &ctx : standard_contexts()) {
            for (int it = 0; it < 100; ++it) {
                PolyT<double> q = rand_poly(rng, 10);
                Degree offs{1, 1};
                if (ctx.in_pi_theta(offs)) offs = Degree{1, 2};
                for (Degree d : {offs, Degree::pi_over_theta(1), Degree{0, 0}, Degree::pi_over_theta(-2)}) {
                    PolyT<double> p = rim_solve(ctx, d, q);
                    PolyT<double> back = im_alpha_shift(ctx, Exponent::lattice(d), p);
                    auto scale = im_alpha_shift_scale(ctx, p);
                    int n = std::max(back.degree(), q.degree());
                    for (int j = 0; j <= n; ++j) {
                        double s = std::max({1e-30, j < (int)scale.size() ? scale[(std::size_t)j] : 0.0,
                                             std::abs(q.coeff((std::size_t)j))});
                        worst = std::max(worst, std::abs(back.coeff((std::size_t)j) - q.coeff((std::size_t)j)) / s);
                    }
                }
            }
        }
        r.pass = worst < base.tol.rim_roundtrip;
        r.detail = "max rel err " + fmt_real(worst) + " < " + fmt_real(base.tol.rim_roundtrip);
    });

    // 3. resolvent identities and annihilations
    record("resolvent", [&](CheckResult &r) {
        std::mt19937_64 rng(99);
        double worst_sym = 0.0, worst_grid = 0.0, worst_sigma = 0.0;
        for (const auto &ctx : standard_contexts()) {
            std::vector<Degree> sigma_window;
            for (long long m = -4; m <= 4; ++m)
                if (m != 0) sigma_window.push_back(Degree::pi_over_theta(m));
            for (int it = 0; it < 30; ++it) {
                // Delta o R_Delta = id; layer part and its normal trace vanish
                auto psi = rand_omega(ctx, rng, 3);
                auto phi = r_delta(ctx, psi);
                if (!phi.lambda.empty()) worst_sym = std::max(worst_sym, 1.0);
                double scale = 1.0 + omega_abs(psi);
                worst_sym = std::max(worst_sym, omega_diff(ctx, laplacian_omega(ctx, phi.omega), psi) / scale);
                for (Degree d : sigma_window) worst_sigma = std::max(worst_sigma, std::abs(sigma_d(ctx, phi, d)));
                for (double rr : {0.6, 1.3}) {
                    for (double th : {0.35 * ctx.theta(), 0.8 * ctx.theta()}) {
                        C lhs = eval_omega(ctx, laplacian_omega(ctx, phi.omega), rr, th);
                        C rhs = eval_omega(ctx, psi, rr, th);
                        worst_grid = std::max(worst_grid, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
                    }
                }
                // dYY o R_dYY = id; sector part harmonic
                auto lsrc = rand_lambda_source(ctx, rng, 3);
                auto lphi = r_dyy(ctx, lsrc);
                {
                    LambdaElement<double> got = dyy_lambda(ctx, lphi.lambda);
                    LambdaElement<double> diffv = got;
                    for (const auto &t : lsrc) diffv.push_back(LambdaTerm<double>{t.d, t.Q * C(-1)});
                    diffv = normalize(ctx, std::move(diffv));
                    double m = 0, ms = 0;
                    for (const auto &t : diffv) m = std::max(m, t.Q.max_abs());
                    for (const auto &t : lsrc) ms = std::max(ms, t.Q.max_abs());
                    worst_sym = std::max(worst_sym, m / (1.0 + ms));
                    if (!laplacian_omega(ctx, lphi.omega).empty()) worst_sym = std::max(worst_sym, 1.0);
                    GammaElement<double> tr = dy_gamma_minus(ctx, lphi.lambda);
                    for (const auto &t : tr) worst_sym = std::max(worst_sym, t.Q.max_abs() / (1.0 + ms));
                }
                for (Degree d : sigma_window) worst_sigma = std::max(worst_sigma, std::abs(sigma_d(ctx, lphi, d)));
                // dY|0- o R_N = id; both other equations homogeneous
                auto gsrc = rand_gamma(ctx, rng, 3);
                auto gphi = r_neumann(ctx, gsrc);
                {
                    GammaElement<double> got = dy_gamma_minus(ctx, gphi.lambda);
                    GammaElement<double> diffv = got;
                    for (const auto &t : gsrc) diffv.push_back(GammaTerm<double>{t.d, t.Q * C(-1)});
                    diffv = normalize(ctx, std::move(diffv));
                    double m = 0, ms = 0;
                    for (const auto &t : diffv) m = std::max(m, t.Q.max_abs());
                    for (const auto &t : gsrc) ms = std::max(ms, t.Q.max_abs());
                    worst_sym = std::max(worst_sym, m / (1.0 + ms));
                    if (!laplacian_omega(ctx, gphi.omega).empty()) worst_sym = std::max(worst_sym, 1.0);
                    LambdaElement<double> dyy = dyy_lambda(ctx, gphi.lambda);
                    for (const auto &t : dyy) worst_sym = std::max(worst_sym, t.Q.max_abs() / (1.0 + ms));
                }
                for (Degree d : sigma_window) worst_sigma = std::max(worst_sigma, std::abs(sigma_d(ctx, gphi, d)));
            }
        }
        r.pass = worst_sym < base.tol.resolvent_sym && worst_grid < base.tol.resolvent_grid && worst_sigma == 0.0;
        r.detail = "sym " + fmt_real(worst_sym) + " < " + fmt_real(base.tol.resolvent_sym) + ", grid " +
                   fmt_real(worst_grid) + " < " + fmt_real(base.tol.resolvent_grid) + ", sigma " +
                   fmt_real(worst_sigma) + " (exact 0)";
    });

    // 4. harmonicity of phi_d and boundary vanishing of library elements
    record("harmonic", [&](CheckResult &r) {
        std::mt19937_64 rng(7);
        bool harmonic_ok = true;
        double worst = 0.0;
        for (const auto &ctx : standard_contexts()) {
            for (long long m : {-2LL, -1LL, 1LL, 2LL}) {
                auto phi = phi_d<double>(ctx, Degree::pi_over_theta(m));
                if (!laplacian_omega(ctx, phi.omega).empty()) harmonic_ok = false;
            }
            for (int it = 0; it < 6; ++it) {
                PiElement<double> produced =
                    pi_add(ctx, r_dyy(ctx, rand_lambda_source(ctx, rng, 2)), r_neumann(ctx, rand_gamma(ctx, rng, 2)));
                produced = pi_add(ctx, produced, r_delta(ctx, rand_omega(ctx, rng, 2)));
                for (int i = 1; i <= 10; ++i) {
                    double rr = 0.3 + 0.2 * i;
                    double scale = 1.0 + eval_scale(ctx, produced, rr);
                    worst = std::max(worst, std::abs(eval_omega(ctx, produced.omega, rr, ctx.theta())) / scale);
                    worst = std::max(worst, std::abs(eval_lambda(ctx, produced.lambda, rr, -1.0)) / scale);
                }
            }
        }
        r.pass = harmonic_ok && worst < base.tol.boundary;
        r.detail = std::string("Delta phi_d exact: ") + (harmonic_ok ? "yes" : "NO") + ", boundary " +
                   fmt_real(worst) + " < " + fmt_real(base.tol.boundary);
    });

    // 5. geometric series DP vs word enumeration (words <= 5, windows p <= 3)
    record("geometric", [&](CheckResult &r) {
        double worst = 0.0;
        for (const char *theta : {"pi*2/3", "2.0"}) {
            auto cfg = config_for(base, theta);
            const auto &ctx = *cfg.ctx;
            for (bool plus : {true, false}) {
                auto ops = plus ? build_Rplus(cfg) : build_Rminus(cfg);
                Degree d0 = Degree::pi_over_theta(plus ? 1 : -1);
                GradedSeries<double> seed(cfg.ctx, plus ? Orientation::Plus : Orientation::Minus);
                seed.add(Degree{0, 0}, d0, 0, phi_d<double>(ctx, d0));
                Direction v = plus ? Direction{2, 1} : Direction{2, -1};
                // every operator raises the level by >= 1, so words longer than
                // 5 cannot touch the capped cone
                Degree cap = v.level(Degree{0, 0}, d0) + Degree::integer(5);
                auto dp = geometric_series_capped(ops, seed, v, cap);
                auto words = enumerate_words(ops, seed, 5, v, cap);
                // componentwise comparison restricted to the p <= 3 window
                for (const auto &[key, cell] : dp.cells()) {
                    if (ctx.compare(key.first, Degree::integer(3)) > 0) continue;
                    for (int l = 0; l <= cell.max_l(); ++l) {
                        const PiElement<double> *other = words.entry(key.first, key.second, l);
                        PiElement<double> empty;
                        double diff = pi_diff_norm(ctx, cell.by_l[(std::size_t)l], other ? *other : empty);
                        worst = std::max(worst, diff / (1.0 + pi_max_abs(cell.by_l[(std::size_t)l])));
                    }
                }
            }
        }
        r.pass = worst < base.tol.geom_oracle;
        r.detail = "max componentwise diff " + fmt_real(worst) + " < " + fmt_real(base.tol.geom_oracle);
    });

    // 6. unit matching cells and structural constraint vanishing
    record("matching", [&](CheckResult &r) {
        double worst = 0.0;
        bool structural_ok = true;
        for (const char *theta : {"pi*2/3", "2.0"}) {
            auto cfg = config_for(base, theta);
            MatchingEngine<double> eng(cfg);
            for (long long m : {1LL, 2LL}) {
                Degree d = Degree::pi_over_theta(m);
                worst = std::max(worst, std::abs(eng.match_coeff(MatchKind::Su, d, d, d, 0) - C(1)));
                worst = std::max(worst, std::abs(eng.match_coeff(MatchKind::uS, d, d, Degree{0, 0} - d, 0) - C(1)));
            }
            // no populated cell may violate the constraint set
            TableWindow twin;
            twin.p_min = Degree::integer(-3);
            twin.p_max = Degree::integer(3);
            twin.d_min = Degree::integer(-3);
            twin.d_max = Degree::integer(3);
            twin.dp_min = Degree::integer(-3);
            twin.dp_max = Degree::integer(3);
            twin.l_max = 3;
            for (MatchKind kind : {MatchKind::uS, MatchKind::Su}) {
                auto t = eng.compute_table(kind, twin);
                for (const auto &[key, v] : t.cells) {
                    Degree a = kind == MatchKind::uS ? key.p + key.d : key.p - key.d;
                    Degree b = kind == MatchKind::uS ? key.p + key.dp : key.p - key.dp;
                    if (!cfg.ctx->is_natural(a) || !cfg.ctx->is_natural(b)) structural_ok = false;
                }
            }
        }
        r.pass = worst < base.tol.match_unit && structural_ok;
        r.detail = "unit-cell dev " + fmt_real(worst) + " < " + fmt_real(base.tol.match_unit) +
                   std::string(structural_ok ? ", constraint set clean" : ", CONSTRAINT VIOLATION");
    });

    // 7. matrix identity Q o P = id on the window p <= 2 + ceil(2 pi / Theta)
    record("matrix", [&](CheckResult &r) {
        double worst_qp = 0.0, worst_diag = 0.0;
        std::string sizes;
        for (const char *theta : {"pi*2/3", "2.0"}) {
            auto cfg = config_for(base, theta);
            MatchingEngine<double> eng(cfg);
            long long pmax = 2 + static_cast<long long>(std::ceil(2.0 * cfg.ctx->pi_over_theta()));
            QpReport rep = matching_matrices_check(eng, Degree::integer(pmax), Degree::pi_over_theta(2), 2);
            worst_qp = std::max(worst_qp, rep.max_qp_dev);
            worst_diag = std::max(worst_diag, rep.max_diag_dev);
            sizes += std::string(theta) + ":" + std::to_string(rep.s_cells) + "x" + std::to_string(rep.u_cells) + " ";
        }
        r.pass = worst_qp < base.tol.qp_identity && worst_diag < base.tol.match_unit;
        r.detail = "|QP-I| " + fmt_real(worst_qp) + " < " + fmt_real(base.tol.qp_identity) + ", diag dev " +
                   fmt_real(worst_diag) + " (" + sizes + ")";
    });

    // 8. layer correctors against the tangent recurrence
    record("layer", [&](CheckResult &r) {
        auto profiles = layer_corrector_profiles(8);
        auto tangents = tangent_coefficients(8);
        bool exact_ok = true;
        for (int n = 0; n <= 8; ++n)
            if (rat_eval(profiles[(std::size_t)n], BigRational(0)) != tangents[(std::size_t)n]) exact_ok = false;
        double worst = 0.0;
        auto cfg = config_for(base, "pi*2/3");
        for (int n = 0; n <= 8; ++n) {
            C got = layer_corrector(cfg, n).eval(C(0), C(0));
            double expect = cfg.mu_ratio * rat_to_double(tangents[(std::size_t)n]);
            worst = std::max(worst, std::abs(got - C(expect)));
        }
        r.pass = exact_ok && worst < base.tol.match_unit;
        r.detail = std::string("rational path ") + (exact_ok ? "exact" : "BROKEN") + ", float dev " + fmt_real(worst);
    });

    // 9. derivative oracle: analytic eval vs central differences
    record("fd", [&](CheckResult &r) {
        std::mt19937_64 rng(4321);
        std::uniform_real_distribution<double> ur(0.5, 2.0), uy(-0.9, -0.1);
        double worst = 0.0;
        for (const auto &ctx : standard_contexts()) {
            std::uniform_real_distribution<double> ut(0.15 * ctx.theta(), 0.85 * ctx.theta());
            for (int it = 0; it < 7; ++it) {
                PiElement<double> e{rand_omega(ctx, rng, 2, 2), rand_lambda_member(ctx, rng, 2)};
                std::vector<std::pair<double, double>> op, lp;
                for (int i = 0; i < 10; ++i) {
                    op.emplace_back(ur(rng), ut(rng));
                    lp.emplace_back(ur(rng), uy(rng));
                }
                auto rep = fd_check(ctx, e, op, lp, 1e-5);
                worst = std::max(worst, rep.max_rel_err);
            }
        }
        r.pass = worst < base.tol.fd;
        r.detail = "max rel err " + fmt_real(worst) + " < " + fmt_real(base.tol.fd);
    });

    // 10. residual slope of the truncated impulse expansion
    record("slope", [&](CheckResult &r) {
        auto cfg = config_for(base, "2.0");
        MatchingEngine<double> eng(cfg);
        SigmaLedger<double> ledger(cfg.ctx);
        Degree d0 = Degree::pi_over_theta(1);
        ledger.set(FieldTag::Far, Degree{0, 0}, d0, 0, C(1), Provenance::Ingested);
        std::vector<double> radii;
        for (int j = 3; j <= 9; ++j) radii.push_back(std::pow(2.0, -j));
        double worst = 0.0;
        bool pass = true;
        std::string detail;
        for (int extra : {2, 4}) {
            Degree D = d0 + Degree::integer(extra);
            Window w{Degree::integer(1), Degree{0, 0} - Degree::integer(1), D + Degree::integer(2)};
            auto s = build_u0_series(eng, ledger, w);
            auto rep = residual_slope(cfg, s, Degree{0, 0}, D, radii);
            worst = std::max(worst, std::fabs(rep.slope - rep.expected_slope));
            pass = pass && rep.pass;
            detail += "D=pi/Theta+" + std::to_string(extra) + ": slope " + fmt_real(rep.slope) + " vs " +
                      fmt_real(rep.expected_slope) + "  ";
        }
        r.pass = pass && worst <= base.tol.slope;
        r.detail = detail + "(tol " + fmt_real(base.tol.slope) + ")";
    });

    // 11. H_eps inverse pair and the ln eps degree bound
    record("heps", [&](CheckResult &r) {
        auto cfg = config_for(base, "pi*2/3");
        const auto &ctx = *cfg.ctx;
        std::mt19937_64 rng(55);
        std::uniform_int_distribution<long long> pa(0, 2), da(-2, 2), db(-1, 1);
        double worst = 0.0;
        bool lbound_ok = true;
        for (int it = 0; it < 10; ++it) {
            GradedSeries<double> s(cfg.ctx, Orientation::Plus);
            for (int i = 0; i < 6; ++i) {
                Degree d{da(rng), db(rng)};
                OmegaElement<double> raw;
                for (int k = 0; k <= 2; ++k)
                    raw.push_back(OmegaTerm<double>{Exponent::lattice(d - Degree::integer(k)), k, rand_poly(rng, 3)});
                s.add(Degree{pa(rng), 0}, d, 0, PiElement<double>{normalize(ctx, raw), {}});
            }
            auto back = scale_heps(scale_heps(s, ScaleDirection::Forward), ScaleDirection::Inverse);
            worst = std::max(worst, series_diff_norm(back, s) / (1.0 + series_max_abs(s)));
            int tdeg = 0;
            for (const auto &[key, cell] : s.cells())
                for (const auto &e : cell.by_l)
                    for (const auto &t : e.omega) tdeg = std::max(tdeg, t.P.degree());
            if (scale_heps(s, ScaleDirection::Forward).max_l() > tdeg) lbound_ok = false;
        }
        r.pass = worst < base.tol.heps && lbound_ok;
        r.detail = "cell-wise dev " + fmt_real(worst) + " < " + fmt_real(base.tol.heps) +
                   std::string(lbound_ok ? ", ln eps bound structural" : ", LN BOUND VIOLATED");
    });

    // 12. determinism of the table exports across runs and worker counts
    record("determinism", [&](CheckResult &r) {
        TableWindow twin;
        twin.p_min = Degree::integer(-3);
        twin.p_max = Degree::integer(3);
        twin.d_min = Degree::integer(-3);
        twin.d_max = Degree::integer(3);
        twin.dp_min = Degree::integer(-3);
        twin.dp_max = Degree::integer(3);
        twin.l_max = 3;
        auto run = [&](int workers) {
            ConfigData c = base;
            c.theta = parse_theta("pi*2/3");
            c.workers = workers;
            auto cfg = ProblemConfig<double>::make(c);
            MatchingEngine<double> eng(cfg);
            std::string csv = table_to_csv(eng.compute_table(MatchKind::uS, twin));
            csv += table_to_csv(eng.compute_table(MatchKind::Su, twin));
            return csv;
        };
        std::string a = run(1), b = run(4), c2 = run(1);
        r.pass = (a == b) && (a == c2);
        r.detail = r.pass ? "byte-identical across {1,4} workers and repeated runs"
                          : "EXPORTS DIFFER across runs/workers";
    });

    return results;
}

inline bool all_passed(const std::vector<CheckResult> &results) {
    if (results.empty()) return false;
    for (const auto &r : results)
        if (!r.pass) return false;
    return true;
}

inline Json check_report_json(const std::vector<CheckResult> &results) {
    Json arr = Json::array();
    for (const auto &r : results)
        arr.push_back(Json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"ms", r.ms}});
    return Json{{"suites", arr}, {"pass", all_passed(results)}};
}

} // namespace cornerlayer

#endif
