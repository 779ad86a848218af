#ifndef CORNERLAYER_ANGLE_HPP
#define CORNERLAYER_ANGLE_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cornerlayer {

// Exact point of the index lattice Z + (pi/Theta)Z, stored as the integer
// pair (a, b) with value a + b*(pi/Theta).
struct Degree {
    long long a = 0;
    long long b = 0;

    friend Degree operator+(Degree l, Degree r) { return {l.a + r.a, l.b + r.b}; }
    friend Degree operator-(Degree l, Degree r) { return {l.a - r.a, l.b - r.b}; }
    Degree operator-() const { return {-a, -b}; }
    Degree &operator+=(Degree r) { a += r.a; b += r.b; return *this; }
    Degree &operator-=(Degree r) { a -= r.a; b -= r.b; return *this; }

    static Degree integer(long long n) { return {n, 0}; }
    static Degree pi_over_theta(long long n) { return {0, n}; }
};

// The sector angle Theta, either declared as an exact rational multiple of pi
// (lattice collisions between Z and (pi/Theta)Z are then resolved exactly) or
// as a plain radian value (irrational mode: Z meets (pi/Theta)Z only in 0).
class AngleContext {
public:
    static AngleContext radians(double theta) {
        if (!(theta > 0.0) || !(theta < 2.0 * pi()))
            throw std::invalid_argument("Theta must lie in (0, 2*pi)");
        AngleContext c;
        c.theta_ = theta;
        c.rational_ = false;
        return c;
    }

    // Theta = pi * num/den, reduced to lowest terms.
    static AngleContext rational_pi(long long num, long long den) {
        if (num <= 0 || den <= 0) throw std::invalid_argument("Theta = pi*num/den needs num, den > 0");
        long long g = std::gcd(num, den);
        num /= g;
        den /= g;
        if (!(static_cast<double>(num) / static_cast<double>(den) < 2.0))
            throw std::invalid_argument("Theta must lie in (0, 2*pi)");
        AngleContext c;
        c.theta_ = pi() * static_cast<double>(num) / static_cast<double>(den);
        c.rational_ = true;
        c.num_ = num;
        c.den_ = den;
        return c;
    }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

    double theta() const { return theta_; }
    double pi_over_theta() const { return rational_ ? static_cast<double>(den_) / static_cast<double>(num_) : pi() / theta_; }
    bool rational() const { return rational_; }
    long long theta_num() const { return num_; }
    long long theta_den() const { return den_; }
    double real_tol() const { return real_tol_; }

    double value(Degree d) const { return static_cast<double>(d.a) + static_cast<double>(d.b) * pi_over_theta(); }

    // In rational mode d = (a*num + b*den)/num; the numerator over the fixed
    // denominator num is a canonical exact key.
    long long rational_key(Degree d) const { return d.a * num_ + d.b * den_; }

    int compare(Degree l, Degree r) const {
        if (rational_) {
            long long kl = rational_key(l), kr = rational_key(r);
            return kl < kr ? -1 : (kl > kr ? 1 : 0);
        }
        if (l.a == r.a && l.b == r.b) return 0;
        long double diff = static_cast<long double>(l.a - r.a) * static_cast<long double>(theta_) +
                           static_cast<long double>(l.b - r.b) * static_cast<long double>(pi());
        return diff < 0.0L ? -1 : 1; // never 0: Theta/pi irrational by declaration
    }
    bool equal(Degree l, Degree r) const { return compare(l, r) == 0; }
    bool less(Degree l, Degree r) const { return compare(l, r) < 0; }
    bool is_zero(Degree d) const { return rational_ ? rational_key(d) == 0 : (d.a == 0 && d.b == 0); }

    // exact integer value, if any
    std::optional<long long> as_int(Degree d) const {
        if (rational_) {
            long long k = rational_key(d);
            if (k % num_ != 0) return std::nullopt;
            return k / num_;
        }
        if (d.b != 0) return std::nullopt;
        return d.a;
    }

    bool in_Z(Degree d) const { return as_int(d).has_value(); }
    bool is_natural(Degree d) const {
        auto n = as_int(d);
        return n.has_value() && *n >= 0;
    }

    // d in (pi/Theta)Z, i.e. d = m*(pi/Theta) for some integer m
    std::optional<long long> as_pi_theta_multiple(Degree d) const {
        if (rational_) {
            long long k = rational_key(d);
            if (k % den_ != 0) return std::nullopt;
            return k / den_;
        }
        if (d.a != 0) return std::nullopt;
        return d.b;
    }
    bool in_pi_theta(Degree d) const { return as_pi_theta_multiple(d).has_value(); }
    bool in_pi_theta_star(Degree d) const { return in_pi_theta(d) && !is_zero(d); }

    // d in P = N + (pi/Theta)N
    bool in_P(Degree d) const {
        if (rational_) {
            long long k = rational_key(d);
            if (k < 0) return false;
            // k = i*num + j*den with i, j >= 0
            for (long long j = 0; j * den_ <= k; ++j)
                if ((k - j * den_) % num_ == 0) return true;
            return false;
        }
        return d.a >= 0 && d.b >= 0;
    }

    bool in_P_minus(Degree d, Degree p) const { return in_P(d + p); }  // d in P - p
    bool in_minus_P(Degree d, Degree p) const { return in_P(p - d); }  // d in p - P

    // Sorted, deduplicated values of P in [0, limit].
    std::vector<Degree> enumerate_P_upto(Degree limit) const {
        std::vector<Degree> out;
        if (compare(limit, Degree{0, 0}) < 0) return out;
        for (long long j = 0;; ++j) {
            Degree base{0, j};
            if (compare(base, limit) > 0) break;
            for (long long i = 0;; ++i) {
                Degree d{i, j};
                if (compare(d, limit) > 0) break;
                out.push_back(d);
            }
        }
        sort_unique(out);
        return out;
    }

    // [[a,b]] = {c | c - a in P and b - c in N}; a finite subset of [a, b].
    std::vector<Degree> enumerate_interval(Degree a, Degree b) const {
        std::vector<Degree> out;
        Degree span = b - a;
        if (compare(span, Degree{0, 0}) < 0) return out;
        for (Degree s : enumerate_P_upto(span)) {
            auto rest = as_int(span - s);
            if (rest.has_value() && *rest >= 0) out.push_back(a + s);
        }
        sort_unique(out);
        return out;
    }

    // (pi/Theta)Z* restricted to [lo, hi] (real bounds)
    std::vector<Degree> enumerate_pi_theta_star(double lo, double hi) const {
        std::vector<Degree> out;
        double step = pi_over_theta();
        long long mlo = static_cast<long long>(std::ceil(lo / step - 1e-9));
        long long mhi = static_cast<long long>(std::floor(hi / step + 1e-9));
        for (long long m = mlo; m <= mhi; ++m)
            if (m != 0) out.push_back(Degree{0, m});
        return out;
    }

    void sort_unique(std::vector<Degree> &v) const {
        std::sort(v.begin(), v.end(), [this](Degree l, Degree r) { return less(l, r); });
        v.erase(std::unique(v.begin(), v.end(), [this](Degree l, Degree r) { return equal(l, r); }), v.end());
    }

private:
    double theta_ = pi() / 2;
    bool rational_ = false;
    long long num_ = 1, den_ = 2;
    double real_tol_ = 1e-12;
};

struct DegreeLess {
    const AngleContext *ctx = nullptr;
    bool operator()(Degree l, Degree r) const { return ctx->less(l, r); }
    bool operator()(const std::pair<Degree, Degree> &l, const std::pair<Degree, Degree> &r) const {
        int c = ctx->compare(l.first, r.first);
        if (c != 0) return c < 0;
        return ctx->less(l.second, r.second);
    }
};

// Exponent of a singularity term: a lattice point in the paper's workflows,
// with an off-lattice real escape hatch kept for generality of the spaces.
struct Exponent {
    bool on_lattice = true;
    Degree d{};
    double x = 0.0;

    static Exponent lattice(Degree dd) { return Exponent{true, dd, 0.0}; }
    static Exponent real(double v) { return Exponent{false, Degree{}, v}; }
};

inline double exp_value(const AngleContext &ctx, const Exponent &e) { return e.on_lattice ? ctx.value(e.d) : e.x; }

inline Exponent exp_add(const AngleContext &ctx, const Exponent &e, Degree shift) {
    if (e.on_lattice) return Exponent::lattice(e.d + shift);
    return Exponent::real(e.x + ctx.value(shift));
}

inline Exponent exp_add_int(const Exponent &e, long long n) {
    if (e.on_lattice) return Exponent::lattice(e.d + Degree::integer(n));
    Exponent r = e;
    r.x += static_cast<double>(n);
    return r;
}

inline int exp_compare(const AngleContext &ctx, const Exponent &l, const Exponent &r) {
    if (l.on_lattice && r.on_lattice) return ctx.compare(l.d, r.d);
    double lv = exp_value(ctx, l), rv = exp_value(ctx, r);
    double tol = ctx.real_tol() * std::max({1.0, std::fabs(lv), std::fabs(rv)});
    if (std::fabs(lv - rv) <= tol) return 0;
    return lv < rv ? -1 : 1;
}

inline bool exp_equal(const AngleContext &ctx, const Exponent &l, const Exponent &r) { return exp_compare(ctx, l, r) == 0; }

// exact natural-number value, if any (tolerance-based for off-lattice reals)
inline std::optional<long long> exp_as_natural(const AngleContext &ctx, const Exponent &e) {
    if (e.on_lattice) {
        auto n = ctx.as_int(e.d);
        if (n.has_value() && *n >= 0) return n;
        return std::nullopt;
    }
    double r = std::round(e.x);
    if (r >= 0.0 && std::fabs(e.x - r) <= ctx.real_tol() * std::max(1.0, std::fabs(e.x)))
        return static_cast<long long>(r);
    return std::nullopt;
}

inline bool exp_in_pi_theta(const AngleContext &ctx, const Exponent &e) {
    if (e.on_lattice) return ctx.in_pi_theta(e.d);
    double q = e.x / ctx.pi_over_theta();
    return std::fabs(q - std::round(q)) <= ctx.real_tol() * std::max(1.0, std::fabs(q));
}

inline bool exp_is_zero(const AngleContext &ctx, const Exponent &e) {
    if (e.on_lattice) return ctx.is_zero(e.d);
    return std::fabs(e.x) <= ctx.real_tol();
}

inline bool exp_in_pi_theta_star(const AngleContext &ctx, const Exponent &e) {
    return exp_in_pi_theta(ctx, e) && !exp_is_zero(ctx, e);
}

// named lattice sets of the calculus
enum class LatticeSet { Z, PiTheta, PiThetaStar, P };

inline bool degree_in_lattice(const AngleContext &ctx, Degree d, LatticeSet s) {
    switch (s) {
        case LatticeSet::Z: return ctx.in_Z(d);
        case LatticeSet::PiTheta: return ctx.in_pi_theta(d);
        case LatticeSet::PiThetaStar: return ctx.in_pi_theta_star(d);
        case LatticeSet::P: return ctx.in_P(d);
    }
    return false;
}

} // namespace cornerlayer

#endif
