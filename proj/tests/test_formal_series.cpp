#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cornerlayer/matching.hpp"
#include "cornerlayer/oracle.hpp"
#include "test_util.hpp"

using namespace cornerlayer;
using namespace cornerlayer::testutil;

namespace {

ProblemConfig<double> demo_config(bool rational = true) {
    ConfigData c;
    c.theta = rational ? parse_theta("pi*2/3") : parse_theta("2.0");
    c.mu0 = 1.0;
    c.mu1 = 2.0;
    c.rho0 = 1.0;
    c.rho1 = 3.0;
    c.omega_re = 1.0;
    c.omega_im = 0.7;
    return ProblemConfig<double>::make(c);
}

GradedSeries<double> random_series(const ProblemConfig<double> &cfg, std::mt19937_64 &rng, Orientation orient,
                                   int ncells) {
    GradedSeries<double> s(cfg.ctx, orient);
    std::uniform_int_distribution<long long> pa(0, 2), da(-2, 2), db(-1, 1), ll(0, 2);
    for (int i = 0; i < ncells; ++i) {
        Degree p{pa(rng), 0};
        Degree d{da(rng), db(rng)};
        auto e = random_omega_element(*cfg.ctx, rng, 2, 2);
        // make the element homogeneous of grade d: keep only terms of that grade
        OmegaElement<double> homo;
        for (auto &t : e) {
            OmegaTerm<double> w = t;
            auto nk = w.k;
            w.q = Exponent::lattice(d - Degree::integer(nk));
            homo.push_back(std::move(w));
        }
        PiElement<double> pe{normalize(*cfg.ctx, homo), {}};
        s.add(p, d, static_cast<int>(ll(rng)), pe);
    }
    return s;
}

} // namespace

TEST_CASE("truncate") {
    auto cfg = demo_config();
    std::mt19937_64 rng(3);
    auto s = random_series(cfg, rng, Orientation::Plus, 8);
    auto t1 = truncate(s, TruncMode::AtMost, Degree::integer(1));
    auto t2 = truncate(t1, TruncMode::AtMost, Degree::integer(2));
    // nested truncations: T_{<=2} o T_{<=1} = T_{<=1}
    CHECK(series_diff_norm(t2, t1) == 0.0);
    // partition: T_{<=d} + (rest) reassembles the series
    GradedSeries<double> rest(cfg.ctx, Orientation::Plus);
    for (const auto &[key, cell] : s.cells()) {
        if (cfg.ctx->compare(key.second, Degree::integer(1)) <= 0) continue;
        for (int l = 0; l <= cell.max_l(); ++l) rest.add(key.first, key.second, l, cell.by_l[(std::size_t)l]);
    }
    CHECK(series_diff_norm(t1 + rest, s) == 0.0);
    // empty in, empty out
    GradedSeries<double> empty(cfg.ctx, Orientation::Plus);
    CHECK(truncate(empty, TruncMode::AtMost, Degree::integer(3)).empty());
    // unbounded request rejected
    CHECK_THROWS_AS(truncate(s, TruncMode::AtLeast, Degree::integer(0)), std::invalid_argument);
}

TEST_CASE("apply_op shifts cells by the declared degree") {
    auto cfg = demo_config();
    auto ops = build_Rplus(cfg);
    // identity operator keeps the series
    EpsOperator<double> ident{"id", Degree{0, 0}, Degree{0, 0}, [](const PiElement<double> &e) { return e; }};
    std::mt19937_64 rng(5);
    auto s = random_series(cfg, rng, Orientation::Plus, 6);
    CHECK(series_diff_norm(apply_op(ident, s), s) == 0.0);

    // -eps^2 k1^2 R_dYY shifts (p, d) by (2, 0); seed a layer-carrying series
    GradedSeries<double> layer(cfg.ctx, Orientation::Plus);
    auto lam = random_lambda_member(*cfg.ctx, rng, 1);
    LambdaElement<double> homo{LambdaTerm<double>{Exponent::lattice(Degree::integer(1)), lam[0].Q}};
    layer.add(Degree{0, 0}, Degree::integer(1), 0, PiElement<double>{{}, homo});
    auto shifted = apply_op(ops[2], layer);
    REQUIRE(!shifted.empty());
    for (const auto &[key, cell] : shifted.cells()) {
        CHECK(cfg.ctx->equal(key.first, Degree::integer(2)));
        CHECK(cfg.ctx->equal(key.second, Degree::integer(1)));
    }

    // composition associativity: f(g(s)) == (f o g)(s)
    EpsOperator<double> fg{"fg", ops[0].deg_eps + ops[3].deg_eps, ops[0].deg_A + ops[3].deg_A,
                           [&](const PiElement<double> &e) { return ops[0].action(ops[3].action(e)); }};
    auto lhs = apply_op(ops[0], apply_op(ops[3], s));
    auto rhs = apply_op(fg, s);
    CHECK(series_diff_norm(lhs, rhs) <= 1e-14 * (1.0 + series_max_abs(lhs)));
}

TEST_CASE("ansatz lattice violations are flagged") {
    auto cfg = demo_config();
    GradedSeries<double> s(cfg.ctx, Orientation::Plus, true);
    // (p, d) = (0, -1): d must lie in P - p for a plus series
    OmegaElement<double> e{OmegaTerm<double>{Exponent::lattice(Degree::integer(-1)), 0,
                                             PolyT<double>::constant(Cx<double>(1))}};
    CHECK_THROWS_AS(s.add(Degree{0, 0}, Degree::integer(-1), 0, PiElement<double>{e, {}}), std::logic_error);
    // grade mismatch between entry and content
    auto phi = phi_d<double>(*cfg.ctx, Degree::pi_over_theta(1));
    CHECK_THROWS_AS(s.add(Degree{0, 0}, Degree::integer(2), 0, phi), std::logic_error);
}

TEST_CASE("geometric series: empty operator set returns the seed") {
    auto cfg = demo_config();
    std::mt19937_64 rng(7);
    auto seed = random_series(cfg, rng, Orientation::Plus, 5);
    Window w{Degree::integer(4), Degree::integer(-6), Degree::integer(6)};
    auto out = geometric_series(std::vector<EpsOperator<double>>{}, seed, w);
    CHECK(series_diff_norm(out, seed) == 0.0);
}

TEST_CASE("geometric series of -k0^2 R_Delta reproduces the hand expansion") {
    auto cfg = demo_config();
    const auto &ctx = *cfg.ctx;
    Degree d = Degree::pi_over_theta(1);
    GradedSeries<double> seed(cfg.ctx, Orientation::Plus);
    seed.add(Degree{0, 0}, d, 0, phi_d<double>(ctx, d));
    std::vector<EpsOperator<double>> ops{build_Rplus(cfg)[0]};
    Window w{Degree{0, 0}, std::nullopt, d + Degree::integer(4)};
    auto s = geometric_series(ops, seed, w);
    // phi_d - k0^2 R_Delta phi_d + k0^4 R_Delta^2 phi_d
    auto c0 = s.entry(Degree{0, 0}, d, 0);
    auto c2 = s.entry(Degree{0, 0}, d + Degree::integer(2), 0);
    auto c4 = s.entry(Degree{0, 0}, d + Degree::integer(4), 0);
    REQUIRE(c0 != nullptr);
    REQUIRE(c2 != nullptr);
    REQUIRE(c4 != nullptr);
    auto r1 = pi_scale(r_delta(ctx, phi_d<double>(ctx, d).omega), -cfg.k0sq);
    auto r2 = pi_scale(r_delta(ctx, r1.omega), -cfg.k0sq);
    CHECK(pi_diff_norm(ctx, *c0, phi_d<double>(ctx, d)) == 0.0);
    CHECK(pi_diff_norm(ctx, *c2, r1) <= 1e-13 * (1 + pi_max_abs(r1)));
    CHECK(pi_diff_norm(ctx, *c4, r2) <= 1e-13 * (1 + pi_max_abs(r2)));
}

TEST_CASE("geometric series equals word enumeration") {
    for (bool rational : {true, false}) {
        auto cfg = demo_config(rational);
        const auto &ctx = *cfg.ctx;
        for (MatchKind kind : {MatchKind::Su, MatchKind::uS}) {
            bool plus = kind == MatchKind::Su;
            auto ops = plus ? build_Rplus(cfg) : build_Rminus(cfg);
            Degree d0 = Degree::pi_over_theta(plus ? 1 : -1);
            GradedSeries<double> seed(cfg.ctx, plus ? Orientation::Plus : Orientation::Minus);
            seed.add(Degree{0, 0}, d0, 0, phi_d<double>(ctx, d0));
            Direction v = plus ? Direction{2, 1} : Direction{2, -1};
            // cap chosen so that words of length > 5 cannot reach the region:
            // each operator raises the level by at least 1
            Degree cap = v.level(Degree{0, 0}, d0) + Degree::integer(5);
            auto dp = geometric_series_capped(ops, seed, v, cap);
            auto words = enumerate_words(ops, seed, 5, v, cap);
            CHECK(series_diff_norm(dp, words) <= 1e-10 * (1.0 + series_max_abs(dp)));
        }
    }
}

TEST_CASE("geometric series rejects impossible operator sets and caps resources") {
    auto cfg = demo_config();
    std::mt19937_64 rng(19);
    auto seed = random_series(cfg, rng, Orientation::Plus, 3);
    // a degree-(0,0) operator admits no positive direction
    EpsOperator<double> ident{"id", Degree{0, 0}, Degree{0, 0}, [](const PiElement<double> &e) { return e; }};
    Window w{Degree::integer(3), Degree::integer(-5), Degree::integer(5)};
    CHECK_THROWS_AS(geometric_series(std::vector<EpsOperator<double>>{ident}, seed, w), std::invalid_argument);
    // a missing grade bound is an unbounded window for R_Delta-like operators
    EpsOperator<double> up{"up", Degree{0, 0}, Degree::integer(2), [](const PiElement<double> &e) { return e; }};
    Window unbounded{Degree::integer(3), Degree::integer(-5), std::nullopt};
    CHECK_THROWS_AS(geometric_series(std::vector<EpsOperator<double>>{up}, seed, unbounded),
                    std::invalid_argument);
    // a tiny resource cap trips the resource error
    auto ops = build_Rplus(cfg);
    GradedSeries<double> phi_seed(cfg.ctx, Orientation::Plus);
    phi_seed.add(Degree{0, 0}, Degree::pi_over_theta(1), 0, phi_d<double>(*cfg.ctx, Degree::pi_over_theta(1)));
    Window big{Degree::integer(6), Degree::integer(-8), Degree::integer(10)};
    CHECK_THROWS_AS(geometric_series(ops, phi_seed, big, 3), ResourceError);
}

TEST_CASE("direction positivity for the operator families") {
    auto cfg = demo_config();
    Direction vp{2, 1}, vm{2, -1};
    for (const auto &f : build_Rplus(cfg))
        CHECK(cfg.ctx->compare(vp.level(f.deg_eps, f.deg_A), Degree{0, 0}) > 0);
    for (const auto &f : build_Rminus(cfg))
        CHECK(cfg.ctx->compare(vm.level(f.deg_eps, f.deg_A), Degree{0, 0}) > 0);
}

TEST_CASE("scaling operator: pinned expansions") {
    auto cfg = demo_config();
    const auto &ctx = *cfg.ctx;
    Degree d = Degree::pi_over_theta(1);
    // H(Im[(az)^d]) = eps^d Im[(az)^d]: constant P, only j = 0
    GradedSeries<double> s(cfg.ctx, Orientation::Plus);
    s.add(Degree{0, 0}, d, 0, phi_d<double>(ctx, d));
    auto h = scale_heps(s, ScaleDirection::Forward);
    REQUIRE(h.cells().size() == 1);
    const auto *cell = h.entry(d, d, 0);
    REQUIRE(cell != nullptr);
    CHECK(pi_diff_norm(ctx, *cell, phi_d<double>(ctx, d)) == 0.0);
    CHECK(h.max_l() == 0);

    // log factor: H(Im[(az)^d log(az)]) = eps^d (Im[(az)^d log(az)] + ln eps Im[(az)^d])
    GradedSeries<double> s2(cfg.ctx, Orientation::Plus);
    OmegaElement<double> withlog{OmegaTerm<double>{Exponent::lattice(d), 0, PolyT<double>::monomial(1)}};
    s2.add(Degree{0, 0}, d, 0, PiElement<double>{withlog, {}});
    auto h2 = scale_heps(s2, ScaleDirection::Forward);
    const auto *l0 = h2.entry(d, d, 0);
    const auto *l1 = h2.entry(d, d, 1);
    REQUIRE(l0 != nullptr);
    REQUIRE(l1 != nullptr);
    CHECK(pi_diff_norm(ctx, *l0, PiElement<double>{withlog, {}}) == 0.0);
    CHECK(pi_diff_norm(ctx, *l1, phi_d<double>(ctx, d)) == 0.0);
}

TEST_CASE("scaling operator: inverse pair and ln eps degree bound") {
    auto cfg = demo_config();
    std::mt19937_64 rng(11);
    for (int it = 0; it < 10; ++it) {
        auto s = random_series(cfg, rng, Orientation::Plus, 6);
        auto back = scale_heps(scale_heps(s, ScaleDirection::Forward), ScaleDirection::Inverse);
        CHECK(series_diff_norm(back, s) <= 1e-12 * (1.0 + series_max_abs(s)));
        auto back2 = scale_heps(scale_heps(s, ScaleDirection::Inverse), ScaleDirection::Forward);
        CHECK(series_diff_norm(back2, s) <= 1e-12 * (1.0 + series_max_abs(s)));
        // ln eps powers never exceed the T-degree of the source polynomials
        int tdeg = 0;
        for (const auto &[key, cell] : s.cells())
            for (const auto &e : cell.by_l)
                for (const auto &t : e.omega) tdeg = std::max(tdeg, t.P.degree());
        CHECK(scale_heps(s, ScaleDirection::Forward).max_l() <= s.max_l() + tdeg);
    }
}

TEST_CASE("slice extraction and sigma projector") {
    auto cfg = demo_config();
    const auto &ctx = *cfg.ctx;
    GradedSeries<double> empty(cfg.ctx, Orientation::Plus);
    CHECK(empty.slice(Degree{0, 0}, 0).zero());

    // pi+_sigma of sum c_{p,l,d} eps^p ln^l eps phi_d returns it unchanged
    GradedSeries<double> s(cfg.ctx, Orientation::Plus, true);
    s.add(Degree{0, 0}, Degree::pi_over_theta(1), 0, pi_scale(phi_d<double>(ctx, Degree::pi_over_theta(1)), Cx<double>(0.3, 1.0)));
    s.add(Degree::integer(1), Degree::pi_over_theta(1), 2, pi_scale(phi_d<double>(ctx, Degree::pi_over_theta(1)), Cx<double>(-2.0, 0.1)));
    s.add(Degree::integer(3), Degree::pi_over_theta(-1), 1, pi_scale(phi_d<double>(ctx, Degree::pi_over_theta(-1)), Cx<double>(0.9, 0.0)));
    CHECK(series_diff_norm(pi_sigma(s), s) == 0.0);

    // pi+_sigma o R = 0 for every R in R+_eps
    std::mt19937_64 rng(13);
    auto ops = build_Rplus(cfg);
    auto base = random_series(cfg, rng, Orientation::Plus, 5);
    for (const auto &f : ops) {
        auto img = apply_op(f, base);
        CHECK(series_max_abs(pi_sigma(img)) == 0.0);
    }
}

TEST_CASE("linearity of series operations") {
    auto cfg = demo_config();
    std::mt19937_64 rng(17);
    auto a = random_series(cfg, rng, Orientation::Plus, 5);
    auto b = random_series(cfg, rng, Orientation::Plus, 5);
    Cx<double> s(0.7, -0.4);
    auto op = build_Rplus(cfg)[0];
    auto lhs = apply_op(op, a.scaled(s) + b);
    auto rhs = apply_op(op, a).scaled(s) + apply_op(op, b);
    CHECK(series_diff_norm(lhs, rhs) <= 1e-12 * (1.0 + series_max_abs(lhs)));

    auto h_lhs = scale_heps(a.scaled(s) + b, ScaleDirection::Forward);
    auto h_rhs = scale_heps(a, ScaleDirection::Forward).scaled(s) + scale_heps(b, ScaleDirection::Forward);
    CHECK(series_diff_norm(h_lhs, h_rhs) <= 1e-12 * (1.0 + series_max_abs(h_lhs)));
}
