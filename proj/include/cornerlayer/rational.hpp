#ifndef CORNERLAYER_RATIONAL_HPP
#define CORNERLAYER_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace cornerlayer {

using BigRational = boost::multiprecision::cpp_rational;

// polynomial in Y with exact rational coefficients, ascending powers
using RatPoly = std::vector<BigRational>;

inline RatPoly rat_trim(RatPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline BigRational rat_eval(const RatPoly &p, const BigRational &y) {
    BigRational acc = 0;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * y + p[k];
    return acc;
}

inline RatPoly rat_scale(RatPoly p, const BigRational &s) {
    for (auto &c : p) c *= s;
    return rat_trim(std::move(p));
}

// antiderivative vanishing at y0
inline RatPoly rat_antiderivative(const RatPoly &p, const BigRational &y0) {
    RatPoly out(p.size() + 1, BigRational(0));
    for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] = p[k] / BigRational(k + 1);
    out[0] = -rat_eval(out, y0);
    return rat_trim(std::move(out));
}

// Taylor coefficients of the tangent, tan t = sum T_n t^{2n+1}, from the
// recurrence (2n+1) T_n = delta_{n,0} + sum_{i+j=n-1} T_i T_j given by
// tan' = 1 + tan^2. Exact rationals.
inline std::vector<BigRational> tangent_coefficients(int n_max) {
    std::vector<BigRational> t;
    for (int n = 0; n <= n_max; ++n) {
        BigRational acc = (n == 0) ? BigRational(1) : BigRational(0);
        for (int i = 0; i + 1 <= n; ++i) acc += t[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(n - 1 - i)];
        t.push_back(acc / BigRational(2 * n + 1));
    }
    return t;
}

// Layer corrector profiles, normalized by mu0/mu1 = 1:
//   V_0'' = 0,  V_0'(0) = 1,  V_0(-1) = 0   ->  V_0 = Y + 1
//   V_n'' = -V_{n-1},  V_n'(0) = 0,  V_n(-1) = 0
// The physical corrector is (mu0/mu1) V_n; V_n(0) equals the n-th tangent
// coefficient.
inline std::vector<RatPoly> layer_corrector_profiles(int n_max) {
    std::vector<RatPoly> v;
    v.push_back(RatPoly{BigRational(1), BigRational(1)}); // Y + 1
    for (int n = 1; n <= n_max; ++n) {
        RatPoly rhs = rat_scale(v.back(), BigRational(-1));
        RatPoly d1 = rat_antiderivative(rhs, BigRational(0));  // V_n', vanishing at 0
        RatPoly vn = rat_antiderivative(d1, BigRational(-1));  // V_n, vanishing at -1
        v.push_back(std::move(vn));
    }
    return v;
}

inline std::string rat_to_string(const BigRational &r) { return r.str(); }

inline double rat_to_double(const BigRational &r) { return static_cast<double>(r); }

} // namespace cornerlayer

#endif
