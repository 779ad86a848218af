#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cornerlayer/angle.hpp"
#include "cornerlayer/poly.hpp"
#include "cornerlayer/solve1d.hpp"

using namespace cornerlayer;
using C = Cx<double>;
using P = PolyT<double>;

namespace {

P random_poly(std::mt19937_64 &rng, int max_deg, bool complex_coeffs = true) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> dd(0, max_deg);
    int deg = dd(rng);
    std::vector<C> c(static_cast<std::size_t>(deg) + 1);
    for (auto &v : c) v = C(u(rng), complex_coeffs ? u(rng) : 0.0);
    if (c.back() == C(0)) c.back() = C(1.0, 0.0);
    return P(std::move(c));
}

double max_coeff_diff(const P &a, const P &b) {
    P d = a - b;
    return d.max_abs();
}

// round-trip error of rim_solve, coefficient-wise relative to the exact
// accumulation scale of the reconstruction (the basis change is
// ill-conditioned at degree ~10, so a forward-relative measure is not
// meaningful there)
double rim_roundtrip_relerr(const AngleContext &ctx, Degree d, const P &q) {
    P p = rim_solve(ctx, d, q);
    P back = im_alpha_shift(ctx, Exponent::lattice(d), p);
    auto scale = im_alpha_shift_scale(ctx, p);
    double worst = 0.0;
    int n = std::max(back.degree(), q.degree());
    for (int j = 0; j <= n; ++j) {
        double s = std::max({1e-30, j < static_cast<int>(scale.size()) ? scale[static_cast<std::size_t>(j)] : 0.0,
                             std::abs(q.coeff(static_cast<std::size_t>(j)))});
        worst = std::max(worst, std::abs(back.coeff(static_cast<std::size_t>(j)) -
                                         q.coeff(static_cast<std::size_t>(j))) / s);
    }
    return worst;
}

} // namespace

TEST_CASE("degree lattice membership") {
    auto ctx = AngleContext::rational_pi(2, 3); // Theta = 2*pi/3, pi/Theta = 3/2
    Degree three = Degree::integer(3);
    CHECK(ctx.in_pi_theta(three));      // 3 = 2*(3/2)
    CHECK(ctx.in_pi_theta_star(three));
    CHECK(ctx.in_Z(three));
    CHECK(!ctx.in_pi_theta(Degree::integer(1)));
    CHECK(!ctx.in_pi_theta(Degree::integer(2)));

    Degree zero{0, 0};
    for (auto s : {LatticeSet::Z, LatticeSet::PiTheta, LatticeSet::P})
        CHECK(degree_in_lattice(ctx, zero, s));
    CHECK(!degree_in_lattice(ctx, zero, LatticeSet::PiThetaStar));

    auto irr = AngleContext::radians(2.0);
    CHECK(!irr.in_pi_theta_star(Degree::integer(1)));
    CHECK(!irr.in_pi_theta(Degree::integer(1)));
    CHECK(irr.in_pi_theta(Degree{0, 0})); // Z cap (pi/Theta)Z = {0}
    CHECK(irr.in_pi_theta(Degree{0, 5}));
    CHECK(!irr.in_Z(Degree{0, 5}));
}

TEST_CASE("rational mode collapses equal lattice values") {
    auto ctx = AngleContext::rational_pi(2, 3);
    Degree d1 = Degree::integer(3);       // 3
    Degree d2 = Degree::pi_over_theta(2); // 2*(3/2) = 3
    CHECK(ctx.equal(d1, d2));
    CHECK(ctx.compare(d1, d2) == 0);
    auto irr = AngleContext::radians(2.0);
    CHECK(!irr.equal(d1, d2));
}

TEST_CASE("degree arithmetic exact and totally ordered") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> ab(-6, 6);
    for (const auto &ctx : {AngleContext::rational_pi(1, 2), AngleContext::radians(2.0)}) {
        std::vector<Degree> ds;
        for (int i = 0; i < 40; ++i) ds.push_back(Degree{ab(rng), ab(rng)});
        for (int i = 0; i < 40; ++i) {
            Degree s = ds[static_cast<std::size_t>(i)] + ds[static_cast<std::size_t>((i + 13) % 40)];
            Degree t = ds[static_cast<std::size_t>((i + 13) % 40)] + ds[static_cast<std::size_t>(i)];
            CHECK(s.a == t.a);
            CHECK(s.b == t.b);
        }
        // transitivity on sorted sample
        ctx.sort_unique(ds);
        for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
            CHECK(ctx.less(ds[i], ds[i + 1]));
            CHECK(ctx.value(ds[i]) < ctx.value(ds[i + 1]) + 1e-12);
        }
    }
}

TEST_CASE("interval enumeration [[a,b]]") {
    auto ctx = AngleContext::rational_pi(2, 3); // pi/Theta = 3/2
    // [[0,3]] = {c | c - 0 in P and 3 - c in N}; P cap [0,3] = {0,1,1.5,2,2.5,3}
    // and the integrality filter leaves {0,1,2,3}
    auto cells = ctx.enumerate_interval(Degree{0, 0}, Degree::integer(3));
    std::vector<double> vals;
    for (auto c : cells) vals.push_back(ctx.value(c));
    std::vector<double> expect{0.0, 1.0, 2.0, 3.0};
    REQUIRE(vals.size() == expect.size());
    for (std::size_t i = 0; i < vals.size(); ++i) CHECK(vals[i] == doctest::Approx(expect[i]).epsilon(1e-14));

    // [[0, 1.5+2]] with a half-integer endpoint keeps the pi/Theta offsets
    auto cells2 = ctx.enumerate_interval(Degree{0, 0}, Degree{2, 1}); // b = 3.5
    std::vector<double> vals2;
    for (auto c : cells2) vals2.push_back(ctx.value(c));
    std::vector<double> expect2{1.5, 2.5, 3.5}; // c in P with 3.5 - c in N
    REQUIRE(vals2.size() == expect2.size());
    for (std::size_t i = 0; i < vals2.size(); ++i) CHECK(vals2[i] == doctest::Approx(expect2[i]).epsilon(1e-14));

    // empty when b < a
    CHECK(ctx.enumerate_interval(Degree::integer(2), Degree::integer(1)).empty());
}

TEST_CASE("P enumeration") {
    auto ctx = AngleContext::rational_pi(2, 3); // pi/Theta = 1.5
    auto ps = ctx.enumerate_P_upto(Degree::integer(3));
    // P = N + 1.5N: 0, 1, 1.5, 2, 2.5, 3 (3 = 1.5*2 and integer 3 coincide)
    std::vector<double> vals;
    for (auto p : ps) vals.push_back(ctx.value(p));
    std::vector<double> expect{0.0, 1.0, 1.5, 2.0, 2.5, 3.0};
    REQUIRE(vals.size() == expect.size());
    for (std::size_t i = 0; i < vals.size(); ++i) CHECK(vals[i] == doctest::Approx(expect[i]).epsilon(1e-14));

    auto irr = AngleContext::radians(2.0); // pi/Theta ~ 1.5708
    auto qs = irr.enumerate_P_upto(Degree::integer(4));
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) CHECK(irr.less(qs[i], qs[i + 1]));
    for (auto q : qs) CHECK(irr.in_P(q));
}

TEST_CASE("polynomial ring axioms") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 50; ++it) {
        P a = random_poly(rng, 6), b = random_poly(rng, 6), c = random_poly(rng, 6);
        CHECK(max_coeff_diff((a + b) + c, a + (b + c)) <= 1e-13);
        CHECK(max_coeff_diff(a * (b + c), a * b + a * c) <= 1e-13 * (1 + (a * b).max_abs()));
        CHECK(max_coeff_diff(a * b, b * a) <= 1e-13);
        CHECK(max_coeff_diff((a * b) * c, a * (b * c)) <= 1e-12 * (1 + (a * b * c).max_abs()));
        // derivative is a derivation
        CHECK(max_coeff_diff((a * b).derivative(), a.derivative() * b + a * b.derivative()) <=
              1e-12 * (1 + (a * b).max_abs()));
        // antiderivative then derivative is the identity
        CHECK(max_coeff_diff(a.antiderivative().derivative(), a) <= 1e-13);
    }
}

TEST_CASE("poly shift and eval agree") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int it = 0; it < 20; ++it) {
        P a = random_poly(rng, 8);
        C s(u(rng), u(rng)), t(u(rng), u(rng));
        C lhs = a.shifted(s).eval(t);
        C rhs = a.eval(t + s);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("PolyTY basics") {
    using Q = PolyTY<double>;
    Q q = Q::monomial(1, 2, C(2.0, 0.0)); // 2*T*Y^2
    q += Q::monomial(0, 0, C(1.0, 0.0));
    CHECK(q.eval(C(3.0, 0), C(2.0, 0)) == C(25.0, 0.0));
    CHECK(q.d_T().eval(C(0, 0), C(2.0, 0)) == C(8.0, 0.0));
    CHECK(q.d_Y().eval(C(3.0, 0), C(1.0, 0)) == C(12.0, 0.0));
    // antiderivative vanishing at Y = -1
    Q a = q.antiderivative_Y(-1.0);
    CHECK(a.eval_at_Y(-1.0).zero());
    CHECK(a.d_Y().eval(C(0.5, 0), C(0.25, 0)) == q.eval(C(0.5, 0), C(0.25, 0)));
    // eval_at_Y exact at 0
    CHECK(q.eval_at_Y(0.0).coeff(0) == C(1.0, 0.0));
}

TEST_CASE("PolyTY ring axioms on random triples") {
    using Q = PolyTY<double>;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto rand_q = [&]() {
        Q q;
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b) q.add(a, b, C(u(rng), u(rng)));
        return q;
    };
    for (int it = 0; it < 30; ++it) {
        Q a = rand_q(), b = rand_q(), c = rand_q();
        Q lhs = a * (b + c);
        Q rhs = a * b + a * c;
        CHECK((lhs - rhs).max_abs() <= 1e-13 * (1.0 + lhs.max_abs()));
        Q assoc_l = (a * b) * c;
        Q assoc_r = a * (b * c);
        CHECK((assoc_l - assoc_r).max_abs() <= 1e-12 * (1.0 + assoc_l.max_abs()));
        // derivations
        Q dt = (a * b).d_T();
        Q dt2 = a.d_T() * b + a * b.d_T();
        CHECK((dt - dt2).max_abs() <= 1e-12 * (1.0 + dt.max_abs()));
        // Y-antiderivative inverts d_Y and pins the base point (the pinning
        // evaluation leaves only non-associativity roundoff behind)
        Q anti = a.antiderivative_Y(-1.0);
        CHECK((anti.d_Y() - a).max_abs() <= 1e-13 * (1.0 + a.max_abs()));
        CHECK(anti.eval_at_Y(-1.0).max_abs() <= 1e-15 * (1.0 + anti.max_abs()));
    }
}

TEST_CASE("rim_solve pinned examples") {
    auto ctx = AngleContext::radians(2.0);
    // Q = 0 -> P = 0
    CHECK(rim_solve(ctx, Degree::integer(1), P()).zero());
    // d off the (pi/Theta)Z lattice, Q = 1 -> constant 1/Im(alpha^d)
    Degree d = Degree::integer(1);
    P one = P::constant(C(1.0, 0.0));
    P p = rim_solve(ctx, d, one);
    CHECK(p.degree() == 0);
    double im_ad = -std::sin(1.0 * ctx.theta());
    CHECK(p.coeff(0).real() == doctest::Approx(1.0 / im_ad).epsilon(1e-14));
    // d = pi/Theta (alpha^d = -1), Q = 1 -> P = T/Theta
    P pt = rim_solve(ctx, Degree::pi_over_theta(1), one);
    CHECK(pt.degree() == 1);
    CHECK(std::abs(pt.coeff(0)) == 0.0); // P(0) = 0 pinned
    CHECK(pt.coeff(1).real() == doctest::Approx(1.0 / ctx.theta()).epsilon(1e-14));
}

TEST_CASE("rim_solve round trip, both branches") {
    std::mt19937_64 rng(17);
    for (const auto &ctx : {AngleContext::rational_pi(1, 2), AngleContext::rational_pi(2, 3),
                            AngleContext::radians(2.0)}) {
        for (int it = 0; it < 100; ++it) {
            P q = random_poly(rng, 10);
            // off-lattice branch
            Degree d1{1, 1};
            if (ctx.in_pi_theta(d1)) d1 = Degree{1, 2};
            REQUIRE(!ctx.in_pi_theta(d1));
            CHECK(rim_roundtrip_relerr(ctx, d1, q) <= 1e-12);
            CHECK(rim_solve(ctx, d1, q).degree() == q.degree());
            // lattice branch (starless set, includes 0)
            for (Degree d2 : {Degree::pi_over_theta(1), Degree{0, 0}, Degree::pi_over_theta(-2)}) {
                CHECK(rim_roundtrip_relerr(ctx, d2, q) <= 1e-12);
                P p2 = rim_solve(ctx, d2, q);
                CHECK(p2.degree() == q.degree() + 1);
                CHECK(std::abs(p2.coeff(0)) == 0.0);
            }
        }
    }
}

TEST_CASE("rim_solve round trip in extended precision") {
    using PL = PolyT<long double>;
    auto ctx = AngleContext::rational_pi(2, 3);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Cx<long double>> c(9);
    for (auto &v : c) v = Cx<long double>(u(rng), u(rng));
    PL q(std::move(c));
    PL p = rim_solve(ctx, Degree::pi_over_theta(1), q);
    PL back = im_alpha_shift(ctx, Exponent::lattice(Degree::pi_over_theta(1)), p);
    auto scale = im_alpha_shift_scale(ctx, p);
    long double worst = 0.0L;
    for (int j = 0; j <= back.degree(); ++j) {
        long double s = std::max(1.0L, scale[static_cast<std::size_t>(j)]);
        worst = std::max(worst, std::abs(back.coeff(static_cast<std::size_t>(j)) -
                                         q.coeff(static_cast<std::size_t>(j))) / s);
    }
    CHECK(worst <= 1e-15L); // tighter than the double-precision budget
}

TEST_CASE("ode_solve_first_order") {
    // rhs = 0, q != 0 -> 0
    CHECK(ode_solve_first_order<double>(C(3, 0), C(2, 0), P(), false).zero());
    // c=4, q=1, rhs=1 -> P = 1/4
    P p1 = ode_solve_first_order<double>(C(4, 0), C(1, 0), P::constant(C(1, 0)), false);
    CHECK(p1.degree() == 0);
    CHECK(p1.coeff(0) == C(0.25, 0.0));
    // c=2, q=0, rhs=1, fixed constant -> P = T/2
    P p2 = ode_solve_first_order<double>(C(2, 0), C(0, 0), P::constant(C(1, 0)), true);
    CHECK(p2.degree() == 1);
    CHECK(p2.coeff(0) == C(0, 0));
    CHECK(p2.coeff(1) == C(0.5, 0.0));
    // ambiguous q=0 without fixing
    CHECK_THROWS_AS(ode_solve_first_order<double>(C(2, 0), C(0, 0), P::constant(C(1, 0)), false),
                    std::invalid_argument);
    // random substitution check: c*(q*P + P') = rhs
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int it = 0; it < 30; ++it) {
        P rhs = random_poly(rng, 7);
        C c(u(rng) + 2.0, u(rng)), q(u(rng) + 1.5, u(rng));
        P sol = ode_solve_first_order<double>(c, q, rhs, false);
        P lhs = (sol * q + sol.derivative()) * c;
        CHECK(max_coeff_diff(lhs, rhs) <= 1e-11 * (1.0 + rhs.max_abs()));
    }
}
