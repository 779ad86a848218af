#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cornerlayer/matching.hpp"
#include "cornerlayer/io.hpp"
#include "cornerlayer/oracle.hpp"
#include "test_util.hpp"

using namespace cornerlayer;
using namespace cornerlayer::testutil;
using C = Cx<double>;

namespace {

ProblemConfig<double> demo_config(const char *theta = "pi*2/3", int workers = 1) {
    ConfigData c;
    c.theta = parse_theta(theta);
    c.mu0 = 1.0;
    c.mu1 = 2.0;
    c.rho0 = 1.0;
    c.rho1 = 3.0;
    c.omega_re = 1.0;
    c.omega_im = 0.7;
    c.workers = workers;
    return ProblemConfig<double>::make(c);
}

// second x-derivative on interface elements, lifted through the layer type
GammaElement<double> gamma_dxx(const AngleContext &ctx, const GammaElement<double> &g) {
    LambdaElement<double> lifted;
    for (const auto &t : g) lifted.push_back(LambdaTerm<double>{t.d, PolyTY<double>::from_T(t.Q)});
    GammaElement<double> out;
    for (const auto &t : dxx_lambda(ctx, lifted)) out.push_back(GammaTerm<double>{t.d, t.Q.eval_at_Y(0.0)});
    return normalize(ctx, std::move(out));
}

GammaElement<double> gamma_helmholtz_op(const ProblemConfig<double> &cfg, const GammaElement<double> &g) {
    GammaElement<double> out = gamma_dxx(*cfg.ctx, g);
    for (const auto &t : g) out.push_back(GammaTerm<double>{t.d, t.Q * cfg.k1sq});
    return normalize(*cfg.ctx, std::move(out));
}

} // namespace

TEST_CASE("operator family degrees match the published table") {
    auto cfg = demo_config();
    auto rp = build_Rplus(cfg);
    REQUIRE(rp.size() == 4);
    CHECK((rp[0].deg_eps.a == 0 && rp[0].deg_A.a == 2));  // -k0^2 R_Delta: (0, 2)
    CHECK((rp[1].deg_eps.a == 2 && rp[1].deg_A.a == -2)); // -eps^2 R_dYY dxx: (2, -2)
    CHECK((rp[2].deg_eps.a == 2 && rp[2].deg_A.a == 0));  // -eps^2 k1^2 R_dYY: (2, 0)
    CHECK((rp[3].deg_eps.a == 1 && rp[3].deg_A.a == -1)); // eps mu R_N dy+: (1, -1)
    auto rm = build_Rminus(cfg);
    CHECK((rm[0].deg_eps.a == 2 && rm[0].deg_A.a == 2));  // -eps^2 k0^2 R_Delta: (2, 2)
    CHECK((rm[1].deg_eps.a == 0 && rm[1].deg_A.a == -2)); // -R_dYY dXX: (0, -2)
    CHECK((rm[2].deg_eps.a == 2 && rm[2].deg_A.a == 0));
    CHECK((rm[3].deg_eps.a == 0 && rm[3].deg_A.a == -1)); // mu R_N dY+: (0, -1)
}

TEST_CASE("unit matching-coefficient cells") {
    for (const char *theta : {"pi*2/3", "2.0"}) {
        auto cfg = demo_config(theta);
        MatchingEngine<double> eng(cfg);
        for (long long m : {1LL, 2LL}) {
            Degree d = Degree::pi_over_theta(m);
            C su = eng.match_coeff(MatchKind::Su, d, d, d, 0);
            CHECK(std::abs(su - C(1)) <= 1e-12);
            C us = eng.match_coeff(MatchKind::uS, d, d, Degree{0, 0} - d, 0);
            CHECK(std::abs(us - C(1)) <= 1e-12);
        }
        // cells excluded by the constraint set are never populated
        Degree d = Degree::pi_over_theta(1);
        // p + d not natural: p = 0 gives p + d = pi/Theta which is not in N
        CHECK(eng.match_coeff(MatchKind::uS, d, d, Degree{0, 0}, 0) == C(0));
        CHECK_THROWS_AS(eng.match_coeff(MatchKind::uS, Degree::integer(1), d, Degree{0, 0}, 0),
                        std::invalid_argument);
    }
}

TEST_CASE("tables are deterministic across worker counts and independent runs") {
    TableWindow twin;
    twin.p_min = Degree::integer(-3);
    twin.p_max = Degree::integer(3);
    twin.d_min = Degree::integer(-3);
    twin.d_max = Degree::integer(3);
    twin.dp_min = Degree::integer(-3);
    twin.dp_max = Degree::integer(3);
    twin.l_max = 3;
    auto run = [&](int workers) {
        auto cfg = demo_config("pi*2/3", workers);
        MatchingEngine<double> eng(cfg);
        return eng.compute_table(MatchKind::uS, twin);
    };
    auto t1 = run(1);
    auto t4 = run(4);
    auto t1b = run(1);
    REQUIRE(t1.cells.size() > 0);
    REQUIRE(t1.cells.size() == t4.cells.size());
    REQUIRE(t1.cells.size() == t1b.cells.size());
    auto it1 = t1.cells.begin();
    auto it4 = t4.cells.begin();
    auto itb = t1b.cells.begin();
    for (; it1 != t1.cells.end(); ++it1, ++it4, ++itb) {
        // bitwise equality, not approximate
        CHECK(it1->second == it4->second);
        CHECK(it1->second == itb->second);
    }
}

TEST_CASE("matching matrices: Q o P = id on a small window") {
    for (const char *theta : {"pi*2/3", "2.0"}) {
        auto cfg = demo_config(theta);
        MatchingEngine<double> eng(cfg);
        double two_pi_over_theta = 2.0 * cfg.ctx->pi_over_theta();
        Degree d_abs = Degree::pi_over_theta(2);
        (void)two_pi_over_theta;
        QpReport rep = matching_matrices_check(eng, Degree::integer(2), d_abs, 1);
        CAPTURE(theta);
        CAPTURE(rep.max_qp_dev);
        CAPTURE(rep.max_diag_dev);
        CHECK(rep.max_qp_dev < 1e-9);
        CHECK(rep.max_diag_dev < 1e-12);
        CHECK(rep.pass);
    }
}

TEST_CASE("layer correctors and tangent coefficients") {
    auto cfg = demo_config();
    double mu = cfg.mu_ratio;
    // U_0 = (mu0/mu1)(Y+1)
    auto u0 = layer_corrector(cfg, 0);
    CHECK(std::abs(u0.eval(C(0), C(0)) - C(mu)) <= 1e-15);
    CHECK(std::abs(u0.eval(C(0), C(-1))) == 0.0);
    CHECK(std::abs(u0.eval(C(0), C(0.5)) - C(1.5 * mu)) <= 1e-15);
    // U_1(0) = mu/3, U_2(0) = 2 mu/15
    CHECK(std::abs(layer_corrector(cfg, 1).eval(C(0), C(0)) - C(mu / 3.0)) <= 1e-14);
    CHECK(std::abs(layer_corrector(cfg, 2).eval(C(0), C(0)) - C(2.0 * mu / 15.0)) <= 1e-14);
    // tangent recurrence against the classical values
    auto t = tangent_coefficients(4);
    CHECK(t[0] == BigRational(1));
    CHECK(t[1] == BigRational(1, 3));
    CHECK(t[2] == BigRational(2, 15));
    CHECK(t[3] == BigRational(17, 315));
    CHECK(t[4] == BigRational(62, 2835));
    // independent cross-check: V_n(0) equals T_n exactly in rational arithmetic
    auto profiles = layer_corrector_profiles(8);
    auto tt = tangent_coefficients(8);
    for (int n = 0; n <= 8; ++n)
        CHECK(rat_eval(profiles[static_cast<std::size_t>(n)], BigRational(0)) == tt[static_cast<std::size_t>(n)]);
    // defining system holds exactly: V_n'' = -V_{n-1}, V_n'(0) = 0, V_n(-1) = 0
    for (int n = 1; n <= 8; ++n) {
        const RatPoly &vn = profiles[static_cast<std::size_t>(n)];
        RatPoly dd;
        for (std::size_t k = 2; k < vn.size(); ++k) dd.push_back(vn[k] * BigRational(k) * BigRational(k - 1));
        RatPoly neg = rat_scale(profiles[static_cast<std::size_t>(n - 1)], BigRational(-1));
        CHECK(rat_trim(dd) == rat_trim(neg));
        RatPoly d1;
        for (std::size_t k = 1; k < vn.size(); ++k) d1.push_back(vn[k] * BigRational(k));
        CHECK(rat_eval(d1, BigRational(0)) == 0);
        CHECK(rat_eval(vn, BigRational(-1)) == 0);
    }
}

TEST_CASE("layer fields from interface traces") {
    auto cfg = demo_config();
    const auto &ctx = *cfg.ctx;
    // no traces -> zero field (U_{0,l} = 0)
    CHECK(layer_field_from_traces(cfg, {}).empty());
    // single trace x^d c at n = 0 -> x^d c U_0(Y)
    GammaElement<double> tr{GammaTerm<double>{Exponent::lattice(Degree::integer(2)), PolyT<double>::constant(C(2.0, -1.0))}};
    auto u = layer_field_from_traces(cfg, {tr});
    for (double x : {0.7, 1.3}) {
        for (double Y : {-0.8, -0.2}) {
            C expect = C(2.0, -1.0) * C(std::pow(x, 2.0) * cfg.mu_ratio * (Y + 1.0));
            CHECK(std::abs(eval_lambda(ctx, u, x, Y) - expect) <= 1e-13 * (1.0 + std::abs(expect)));
        }
    }
    // dYY U_p = -(dxx + k1^2) U_{p-2} pointwise
    std::mt19937_64 rng(31);
    auto h1 = random_gamma_element(ctx, rng, 2); // dy u_{p-1} on the interface
    auto h3 = random_gamma_element(ctx, rng, 2); // dy u_{p-3}
    auto h5 = random_gamma_element(ctx, rng, 2); // dy u_{p-5}
    auto L = [&](const GammaElement<double> &g) { return gamma_helmholtz_op(cfg, g); };
    auto up = layer_field_from_traces(cfg, {h1, L(h3), L(L(h5))});
    auto upm2 = layer_field_from_traces(cfg, {h3, L(h5)});
    auto rhs_elem = dxx_lambda(ctx, upm2);
    for (double x : {0.6, 1.1, 1.8}) {
        for (double Y : {-0.75, -0.3}) {
            C dyy = eval_lambda(ctx, up, x, Y, 0, 2);
            C rhs = -(eval_lambda(ctx, rhs_elem, x, Y) + cfg.k1sq * eval_lambda(ctx, upm2, x, Y));
            CHECK(std::abs(dyy - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("sigma recursion: zero ingestion gives an all-zero singular ledger") {
    auto cfg = demo_config();
    MatchingEngine<double> eng(cfg);
    auto ledger = sigma_recursion(eng, Degree::integer(2), 1, zero_ingest<double>());
    for (const auto &[key, cell] : ledger.cells()) CHECK(cell.value == C(0));
}

TEST_CASE("sigma recursion equals the hand convolution on an impulse") {
    auto cfg = demo_config();
    MatchingEngine<double> eng(cfg);
    const auto &ctx = *cfg.ctx;
    Degree d0 = Degree::pi_over_theta(1);
    // variational impulse: sigma_{d0}(u0_{0,0}) = 1, everything else 0
    IngestCallback<double> impulse = [&](FieldTag f, Degree p, Degree d, int l) -> std::optional<C> {
        if (f == FieldTag::Far && ctx.is_zero(p) && ctx.equal(d, d0) && l == 0) return C(1);
        return C(0);
    };
    Degree p_max = Degree::integer(4);
    auto ledger = sigma_recursion(eng, p_max, 2, impulse);

    // independent path: with a single nonzero far-regular cell, the corner
    // cells are sigma_d(S_{p,l}) = c^{S<-u}_{d,d0,p,l}, and the far singular
    // cells convolve those back through c^{u<-S}
    for (Degree p : ctx.enumerate_P_upto(p_max)) {
        for (Degree d : ctx.enumerate_pi_theta_star(1e-9, ctx.value(p) + 1e-9)) {
            for (int l = 0; l <= 2; ++l) {
                C expect = eng.match_coeff(MatchKind::Su, d, d0, p, l);
                C got = ledger.value_or_zero(FieldTag::Corner, p, d, l);
                if (!ledger.admissible(FieldTag::Corner, p, d)) continue;
                CHECK(std::abs(got - expect) <= 1e-12 * (1.0 + std::abs(expect)));
            }
        }
        for (Degree d : ctx.enumerate_pi_theta_star(-ctx.value(p) - 1e-9, -1e-9)) {
            for (int l = 0; l <= 2; ++l) {
                if (!ledger.admissible(FieldTag::Far, p, d)) continue;
                // brute-force double convolution over the corner ledger
                C expect(0);
                for (Degree pp : ctx.enumerate_P_upto(p_max)) {
                    for (Degree dp : ctx.enumerate_pi_theta_star(-12.0, 12.0)) {
                        if (!ledger.admissible(FieldTag::Corner, pp, dp)) continue;
                        for (int lp = 0; lp <= l; ++lp) {
                            C s = dp.b > 0 || ctx.value(dp) > 0
                                      ? ledger.value_or_zero(FieldTag::Corner, pp, dp, lp)
                                      : C(0);
                            if (s == C(0)) continue;
                            expect += eng.match_coeff(MatchKind::uS, d, dp, p - pp, l - lp) * s;
                        }
                    }
                }
                C got = ledger.value_or_zero(FieldTag::Far, p, d, l);
                CHECK(std::abs(got - expect) <= 1e-11 * (1.0 + std::abs(expect)));
            }
        }
    }
}

TEST_CASE("sigma recursion is a convolution in (p, l)") {
    // shifting the variational impulse by (1, 1) shifts every computed cell
    auto cfg = demo_config();
    MatchingEngine<double> eng(cfg);
    const auto &ctx = *cfg.ctx;
    Degree d0 = Degree::pi_over_theta(1);
    auto impulse_at = [&](Degree p0, int l0) {
        return IngestCallback<double>([&, p0, l0](FieldTag f, Degree p, Degree d, int l) -> std::optional<C> {
            if (f == FieldTag::Far && ctx.equal(p, p0) && ctx.equal(d, d0) && l == l0) return C(1);
            return C(0);
        });
    };
    auto base_ledger = sigma_recursion(eng, Degree::integer(3), 2, impulse_at(Degree{0, 0}, 0));
    auto shifted_ledger = sigma_recursion(eng, Degree::integer(4), 3, impulse_at(Degree::integer(1), 1));
    for (const auto &[key, cell] : base_ledger.cells()) {
        if (cell.prov != Provenance::Computed) continue;
        Degree ps = key.p + Degree::integer(1);
        if (!shifted_ledger.admissible(key.f, ps, key.d)) continue;
        C shifted = shifted_ledger.value_or_zero(key.f, ps, key.d, key.l + 1);
        CHECK(std::abs(shifted - cell.value) <= 1e-12 * (1.0 + std::abs(cell.value)));
    }
}

TEST_CASE("sigma recursion reports data gaps with the missing cells") {
    auto cfg = demo_config();
    MatchingEngine<double> eng(cfg);
    IngestCallback<double> gappy = [](FieldTag, Degree, Degree, int) { return std::optional<C>(); };
    try {
        sigma_recursion(eng, Degree::integer(2), 0, gappy);
        FAIL("expected DataGapError");
    } catch (const DataGapError &e) {
        std::string msg = e.what();
        CHECK(msg.find("missing ingested cells") != std::string::npos);
        CHECK(msg.find("p=(") != std::string::npos);
    }
}

TEST_CASE("corner coefficients") {
    auto cfg = demo_config("2.0"); // irrational: Z cap (pi/Theta)Z = {0}
    MatchingEngine<double> eng(cfg);
    const auto &ctx = *cfg.ctx;
    CornerProfiles<double> zero(cfg.ctx, true);
    Degree d = Degree::pi_over_theta(-1), dp = Degree::pi_over_theta(2);
    // d - d' != 0 in irrational mode -> product line vanishes -> 0 in zero mode
    Degree p = Degree{2, 3}; // some admissible p in P + 2pi/Theta
    CHECK(corner_coeff(eng, d, dp, p, 0, zero) == C(0));
    // p outside P + 2pi/Theta -> 0
    CHECK(corner_coeff(eng, d, d, Degree::integer(1), 0, zero) == C(0));
    // d = d' allows the product line: compare against a direct double sum
    Degree pd = Degree{2, 2}; // p = 2 + 2 pi/Theta in P + 2pi/Theta
    C got = corner_coeff(eng, d, d, pd, 0, zero);
    C expect(0);
    for (long long a1 = 0; a1 <= 8; ++a1) {
        Degree p1 = Degree::integer(a1) - d;
        Degree p2 = pd - p1;
        if (!ctx.is_natural(p2 - d)) continue;
        for (Degree d1 : ctx.enumerate_pi_theta_star(1e-9, ctx.value(p2) + 1e-9)) {
            if (!ctx.is_natural(p1 + d1) || !ctx.is_natural(p2 - d1)) continue;
            expect += eng.match_coeff(MatchKind::uS, d, d1, p1, 0) * eng.match_coeff(MatchKind::Su, d1, d, p2, 0);
        }
    }
    CHECK(std::abs(got - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    // missing profile data raises a data-gap error with the needed cells
    // (d1 = d, d2 = d' are forced in irrational mode, so d' must be positive
    // for any profile cell to be consulted at all)
    CornerProfiles<double> strict(cfg.ctx, false);
    // in irrational mode d1 = d and d2 = d' are forced, so the consulting p's
    // are N + 3 pi/Theta here; the smallest is (0,3) with the single cell
    // (d1, d2, n) = (d, 2pi/Theta, 0)
    Degree p_profile = Degree{0, 3};
    CHECK_THROWS_AS(corner_coeff(eng, d, dp, p_profile, 0, strict), DataGapError);
    // supplying the consulted cell clears the gap and lands one product:
    // c^{u<-S}_{d,d,-d,0} * prof * c^{S<-u}_{d',d',d',0} = prof, both unit cells
    CornerProfiles<double> filled(cfg.ctx, false);
    filled.set(d, dp, 0, C(0.5, 0.25));
    C with_profile = corner_coeff(eng, d, dp, p_profile, 0, filled);
    CHECK(std::abs(with_profile - C(0.5, 0.25)) <= 1e-12);
}

TEST_CASE("total-field series from an impulse ledger") {
    auto cfg = demo_config();
    MatchingEngine<double> eng(cfg);
    const auto &ctx = *cfg.ctx;
    SigmaLedger<double> ledger(cfg.ctx);
    Degree d0 = Degree::pi_over_theta(1);
    ledger.set(FieldTag::Far, Degree{0, 0}, d0, 0, C(1), Provenance::Ingested);

    // the p = 0 slice of the full series is the pure <-k0^2 R_Delta> expansion
    // (every other generator carries a positive eps-degree)
    Window w0{Degree{0, 0}, Degree{0, 0}, d0 + Degree::integer(4)};
    auto s0 = build_u0_series(eng, ledger, w0);
    GradedSeries<double> seed(cfg.ctx, Orientation::Plus);
    seed.add(Degree{0, 0}, d0, 0, phi_d<double>(ctx, d0));
    auto pure = geometric_series(std::vector<EpsOperator<double>>{build_Rplus(cfg)[0]}, seed, w0);
    PiElement<double> slice_full = truncate(s0, TruncMode::AtMost, d0 + Degree::integer(4)).slice(Degree{0, 0}, 0);
    PiElement<double> slice_pure = truncate(pure, TruncMode::AtMost, d0 + Degree::integer(4)).slice(Degree{0, 0}, 0);
    CHECK(pi_diff_norm(ctx, slice_full, slice_pure) <= 1e-12 * (1.0 + pi_max_abs(slice_pure)));
    CHECK(!slice_pure.zero());

    // graded residual of the defining system vanishes on interior cells
    Window w{Degree::integer(3), Degree{0, 0} - Degree::integer(2), d0 + Degree::integer(4)};
    auto s = build_u0_series(eng, ledger, w);
    CHECK(u0_residual_max(eng, s) <= 1e-10 * (1.0 + series_max_abs(s)));

    // empty ledger -> empty series
    SigmaLedger<double> empty(cfg.ctx);
    CHECK(build_u0_series(eng, empty, w).empty());

    // corner side: impulse on a negative grade, residual of the S system
    SigmaLedger<double> cledger(cfg.ctx);
    cledger.set(FieldTag::Corner, Degree{0, 0}, Degree::pi_over_theta(-1), 0, C(1), Provenance::Ingested);
    Window wc{Degree::integer(3), Degree::pi_over_theta(-1) - Degree::integer(4), Degree::integer(2)};
    auto sc = build_Sinf_series(eng, cledger, wc);
    CHECK(!sc.empty());
    CHECK(sinf_residual_max(eng, sc) <= 1e-10 * (1.0 + series_max_abs(sc)));
}

TEST_CASE("split layer generators agree with the grouped resolvent form") {
    // the family splits R_dYY o (dxx + k1^2) into two eps^2 generators; the
    // grouped application must match their sum on samples
    auto cfg = demo_config();
    const auto &ctx = *cfg.ctx;
    auto ops = build_Rplus(cfg);
    std::mt19937_64 rng(77);
    for (int it = 0; it < 10; ++it) {
        PiElement<double> e{{}, random_lambda_member(ctx, rng, 3)};
        PiElement<double> split = pi_add(ctx, ops[1].action(e), ops[2].action(e));
        LambdaElement<double> grouped_src = dxx_lambda(ctx, e.lambda);
        for (const auto &t : e.lambda) grouped_src.push_back(LambdaTerm<double>{t.d, t.Q * cfg.k1sq});
        grouped_src = normalize(ctx, std::move(grouped_src));
        PiElement<double> grouped = pi_scale(r_dyy(ctx, grouped_src), C(-1));
        CHECK(pi_diff_norm(ctx, split, grouped) <= 1e-12 * (1.0 + pi_max_abs(grouped)));
    }
}

TEST_CASE("persisted tables reload bit-exactly") {
    auto cfg = demo_config();
    MatchingEngine<double> eng(cfg);
    TableWindow twin;
    twin.p_min = Degree::integer(-2);
    twin.p_max = Degree::integer(2);
    twin.d_min = Degree::integer(-2);
    twin.d_max = Degree::integer(2);
    twin.dp_min = Degree::integer(-2);
    twin.dp_max = Degree::integer(2);
    twin.l_max = 2;
    auto t = eng.compute_table(MatchKind::uS, twin);
    auto back = table_from_csv(cfg, table_to_csv(t));
    REQUIRE(back.cells.size() == t.cells.size());
    auto i1 = t.cells.begin();
    auto i2 = back.cells.begin();
    for (; i1 != t.cells.end(); ++i1, ++i2) CHECK(i1->second == i2->second);
    CHECK(back.kind == MatchKind::uS);
    // a mismatched configuration refuses the cached table
    ConfigData other;
    other.theta = parse_theta("pi*2/3");
    other.mu1 = 7.0;
    other.omega_im = 0.7;
    auto cfg2 = ProblemConfig<double>::make(other);
    CHECK_THROWS_AS(table_from_csv(cfg2, table_to_csv(t)), ConfigError);
}

TEST_CASE("coefficient tables depend only on the physical config") {
    // same config, different ledgers/uses: fingerprint and cells identical
    auto cfg1 = demo_config();
    auto cfg2 = demo_config();
    CHECK(cfg1.fingerprint == cfg2.fingerprint);
    MatchingEngine<double> e1(cfg1), e2(cfg2);
    // engine 2 does unrelated work first
    SigmaLedger<double> ledger(cfg2.ctx);
    ledger.set(FieldTag::Far, Degree{0, 0}, Degree::pi_over_theta(1), 0, C(2), Provenance::Ingested);
    Window w{Degree::integer(2), Degree::integer(-3), Degree::integer(4)};
    (void)build_u0_series(e2, ledger, w);
    TableWindow twin;
    twin.p_min = Degree::integer(-2);
    twin.p_max = Degree::integer(2);
    twin.d_min = Degree::integer(-2);
    twin.d_max = Degree::integer(2);
    twin.dp_min = Degree::integer(-2);
    twin.dp_max = Degree::integer(2);
    twin.l_max = 2;
    auto t1 = e1.compute_table(MatchKind::Su, twin);
    auto t2 = e2.compute_table(MatchKind::Su, twin);
    REQUIRE(t1.cells.size() == t2.cells.size());
    auto i1 = t1.cells.begin();
    auto i2 = t2.cells.begin();
    for (; i1 != t1.cells.end(); ++i1, ++i2) CHECK(i1->second == i2->second);
}
