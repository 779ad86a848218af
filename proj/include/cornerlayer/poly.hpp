#ifndef CORNERLAYER_POLY_HPP
#define CORNERLAYER_POLY_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cornerlayer {

template <class R>
using Cx = std::complex<R>;

// Polynomial in one indeterminate T, complex coefficients by ascending power.
// Canonical form: empty vector is the zero polynomial, trailing coefficient
// nonzero otherwise.
template <class R>
class PolyT {
public:
    PolyT() = default;
    explicit PolyT(std::vector<Cx<R>> c) : c_(std::move(c)) { trim(); }
    static PolyT constant(Cx<R> v) { return PolyT(std::vector<Cx<R>>{v}); }
    static PolyT monomial(std::size_t k, Cx<R> v = Cx<R>(1)) {
        std::vector<Cx<R>> c(k + 1);
        c[k] = v;
        return PolyT(std::move(c));
    }

    bool zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Cx<R> coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Cx<R>(0); }
    const std::vector<Cx<R>> &coeffs() const { return c_; }

    Cx<R> at_zero() const { return coeff(0); }

    void set_coeff(std::size_t k, Cx<R> v) {
        if (k >= c_.size()) c_.resize(k + 1, Cx<R>(0));
        c_[k] = v;
        trim();
    }

    PolyT &operator+=(const PolyT &o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Cx<R>(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    PolyT &operator-=(const PolyT &o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Cx<R>(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    PolyT &operator*=(Cx<R> s) {
        for (auto &v : c_) v *= s;
        trim();
        return *this;
    }
    friend PolyT operator+(PolyT l, const PolyT &r) { l += r; return l; }
    friend PolyT operator-(PolyT l, const PolyT &r) { l -= r; return l; }
    friend PolyT operator*(PolyT l, Cx<R> s) { l *= s; return l; }
    friend PolyT operator*(Cx<R> s, PolyT l) { l *= s; return l; }

    friend PolyT operator*(const PolyT &l, const PolyT &r) {
        if (l.zero() || r.zero()) return PolyT();
        std::vector<Cx<R>> c(l.c_.size() + r.c_.size() - 1, Cx<R>(0));
        for (std::size_t i = 0; i < l.c_.size(); ++i)
            for (std::size_t j = 0; j < r.c_.size(); ++j) c[i + j] += l.c_[i] * r.c_[j];
        return PolyT(std::move(c));
    }

    PolyT derivative() const {
        if (c_.size() <= 1) return PolyT();
        std::vector<Cx<R>> c(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) c[k - 1] = c_[k] * Cx<R>(static_cast<R>(k));
        return PolyT(std::move(c));
    }

    // k-th derivative
    PolyT derivative(unsigned k) const {
        PolyT p = *this;
        for (unsigned i = 0; i < k; ++i) p = p.derivative();
        return p;
    }

    // antiderivative vanishing at 0
    PolyT antiderivative() const {
        if (zero()) return PolyT();
        std::vector<Cx<R>> c(c_.size() + 1, Cx<R>(0));
        for (std::size_t k = 0; k < c_.size(); ++k) c[k + 1] = c_[k] / Cx<R>(static_cast<R>(k + 1));
        return PolyT(std::move(c));
    }

    Cx<R> eval(Cx<R> t) const {
        Cx<R> acc(0);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
        return acc;
    }

    // P(T + shift), expanded exactly
    PolyT shifted(Cx<R> shift) const {
        PolyT out;
        PolyT base = constant(Cx<R>(1)); // (T + shift)^k
        PolyT lin(std::vector<Cx<R>>{shift, Cx<R>(1)});
        for (std::size_t k = 0; k < c_.size(); ++k) {
            out += base * c_[k];
            if (k + 1 < c_.size()) base = base * lin;
        }
        return out;
    }

    PolyT real_part() const {
        std::vector<Cx<R>> c(c_.size());
        for (std::size_t k = 0; k < c_.size(); ++k) c[k] = Cx<R>(c_[k].real());
        return PolyT(std::move(c));
    }
    PolyT imag_part() const {
        std::vector<Cx<R>> c(c_.size());
        for (std::size_t k = 0; k < c_.size(); ++k) c[k] = Cx<R>(c_[k].imag());
        return PolyT(std::move(c));
    }
    PolyT conj() const {
        std::vector<Cx<R>> c(c_.size());
        for (std::size_t k = 0; k < c_.size(); ++k) c[k] = std::conj(c_[k]);
        return PolyT(std::move(c));
    }

    R max_abs() const {
        R m = 0;
        for (const auto &v : c_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == Cx<R>(0)) c_.pop_back();
    }

    std::vector<Cx<R>> c_;
};

// Polynomial in (T, Y), sparse map (powT, powY) -> coefficient.
template <class R>
class PolyTY {
public:
    using Key = std::pair<int, int>;
    using Map = std::map<Key, Cx<R>>;

    PolyTY() = default;
    static PolyTY constant(Cx<R> v) {
        PolyTY q;
        q.add(0, 0, v);
        return q;
    }
    static PolyTY monomial(int pt, int py, Cx<R> v = Cx<R>(1)) {
        PolyTY q;
        q.add(pt, py, v);
        return q;
    }
    // lift a PolyT in T (no Y dependence)
    static PolyTY from_T(const PolyT<R> &p) {
        PolyTY q;
        for (std::size_t k = 0; k < p.coeffs().size(); ++k) q.add(static_cast<int>(k), 0, p.coeffs()[k]);
        return q;
    }
    // polynomial in Y only
    static PolyTY from_Y(const std::vector<Cx<R>> &c) {
        PolyTY q;
        for (std::size_t k = 0; k < c.size(); ++k) q.add(0, static_cast<int>(k), c[k]);
        return q;
    }

    bool zero() const { return m_.empty(); }
    const Map &terms() const { return m_; }
    int degree_T() const {
        int d = -1;
        for (const auto &[k, v] : m_) d = std::max(d, k.first);
        return d;
    }
    int degree_Y() const {
        int d = -1;
        for (const auto &[k, v] : m_) d = std::max(d, k.second);
        return d;
    }

    void add(int pt, int py, Cx<R> v) {
        if (v == Cx<R>(0)) return;
        auto it = m_.find({pt, py});
        if (it == m_.end()) {
            m_.emplace(Key{pt, py}, v);
        } else {
            it->second += v;
            if (it->second == Cx<R>(0)) m_.erase(it);
        }
    }

    PolyTY &operator+=(const PolyTY &o) {
        for (const auto &[k, v] : o.m_) add(k.first, k.second, v);
        return *this;
    }
    PolyTY &operator-=(const PolyTY &o) {
        for (const auto &[k, v] : o.m_) add(k.first, k.second, -v);
        return *this;
    }
    PolyTY &operator*=(Cx<R> s) {
        if (s == Cx<R>(0)) { m_.clear(); return *this; }
        for (auto &[k, v] : m_) v *= s;
        return *this;
    }
    friend PolyTY operator+(PolyTY l, const PolyTY &r) { l += r; return l; }
    friend PolyTY operator-(PolyTY l, const PolyTY &r) { l -= r; return l; }
    friend PolyTY operator*(PolyTY l, Cx<R> s) { l *= s; return l; }
    friend PolyTY operator*(Cx<R> s, PolyTY l) { l *= s; return l; }
    friend PolyTY operator*(const PolyTY &l, const PolyTY &r) {
        PolyTY out;
        for (const auto &[kl, vl] : l.m_)
            for (const auto &[kr, vr] : r.m_) out.add(kl.first + kr.first, kl.second + kr.second, vl * vr);
        return out;
    }

    PolyTY d_T() const {
        PolyTY out;
        for (const auto &[k, v] : m_)
            if (k.first > 0) out.add(k.first - 1, k.second, v * Cx<R>(static_cast<R>(k.first)));
        return out;
    }
    PolyTY d_T(unsigned n) const {
        PolyTY p = *this;
        for (unsigned i = 0; i < n; ++i) p = p.d_T();
        return p;
    }
    PolyTY d_Y() const {
        PolyTY out;
        for (const auto &[k, v] : m_)
            if (k.second > 0) out.add(k.first, k.second - 1, v * Cx<R>(static_cast<R>(k.second)));
        return out;
    }

    // antiderivative in Y vanishing at Y = y0 (y0 an exact small integer)
    PolyTY antiderivative_Y(R y0) const {
        PolyTY out;
        for (const auto &[k, v] : m_) out.add(k.first, k.second + 1, v / Cx<R>(static_cast<R>(k.second + 1)));
        PolyT<R> at0 = out.eval_at_Y(y0);
        out -= from_T(at0);
        return out;
    }

    // substitute Y = y, exactly (y a small machine number such as 0 or -1)
    PolyT<R> eval_at_Y(R y) const {
        PolyT<R> out;
        for (const auto &[k, v] : m_) {
            R p = 1;
            for (int i = 0; i < k.second; ++i) p *= y;
            out += PolyT<R>::monomial(static_cast<std::size_t>(k.first), v * Cx<R>(p));
        }
        return out;
    }

    Cx<R> eval(Cx<R> t, Cx<R> y) const {
        Cx<R> acc(0);
        for (const auto &[k, v] : m_) {
            Cx<R> w = v;
            for (int i = 0; i < k.first; ++i) w *= t;
            for (int i = 0; i < k.second; ++i) w *= y;
            acc += w;
        }
        return acc;
    }

    PolyTY conj() const {
        PolyTY out;
        for (const auto &[k, v] : m_) out.add(k.first, k.second, std::conj(v));
        return out;
    }

    R max_abs() const {
        R m = 0;
        for (const auto &[k, v] : m_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    Map m_;
};

} // namespace cornerlayer

#endif
