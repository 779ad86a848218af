#ifndef CORNERLAYER_SERIES_HPP
#define CORNERLAYER_SERIES_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cornerlayer/angle.hpp"
#include "cornerlayer/elements.hpp"

namespace cornerlayer {

// A+ series have d-support bounded below per p, A- series bounded above.
enum class Orientation { Plus, Minus };

// polynomial in ln(eps) with PiElement coefficients
template <class R>
struct LnPoly {
    std::vector<PiElement<R>> by_l;

    void trim() {
        while (!by_l.empty() && by_l.back().zero()) by_l.pop_back();
    }
    bool zero() const { return by_l.empty(); }
    int max_l() const { return static_cast<int>(by_l.size()) - 1; }
};

// operator with a degree pair: maps the (p, d) entry to (p + deg_eps, d + deg_A)
template <class R>
struct EpsOperator {
    std::string name;
    Degree deg_eps{};
    Degree deg_A{};
    std::function<PiElement<R>(const PiElement<R> &)> action;
};

// window of exact computation: cap on the eps-power plus grade bounds
struct Window {
    Degree p_max = Degree::integer(0);
    std::optional<Degree> d_min;
    std::optional<Degree> d_max;
};

// direction vector over (p, d) used to order the worklist
struct Direction {
    int vp = 0;
    int vd = 0;
    Degree level(Degree p, Degree d) const {
        return Degree{vp * p.a + vd * d.a, vp * p.b + vd * d.b};
    }
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sparse formal series indexed by (p, d, l): eps-power, A-grade, ln(eps)-power.
template <class R>
class GradedSeries {
public:
    using CellKey = std::pair<Degree, Degree>;
    using CellMap = std::map<CellKey, LnPoly<R>, DegreeLess>;

    GradedSeries(std::shared_ptr<const AngleContext> ctx, Orientation orient, bool ansatz_lattice = false)
        : ctx_(std::move(ctx)),
          orient_(orient),
          ansatz_lattice_(ansatz_lattice),
          cells_(DegreeLess{ctx_.get()}) {}

    const AngleContext &ctx() const { return *ctx_; }
    std::shared_ptr<const AngleContext> ctx_ptr() const { return ctx_; }
    Orientation orientation() const { return orient_; }
    bool ansatz_lattice() const { return ansatz_lattice_; }
    const CellMap &cells() const { return cells_; }
    bool empty() const { return cells_.empty(); }

    // completeness marker: every lattice cell with <(p,d),v> <= cap is exact
    void mark_complete(Direction v, Degree cap) { complete_ = std::make_pair(v, cap); }
    std::optional<std::pair<Direction, Degree>> completeness() const { return complete_; }

    void add(Degree p, Degree d, int l, const PiElement<R> &e) {
        if (e.zero()) return;
        if (ansatz_lattice_) check_lattice(p, d);
        check_homogeneous(d, e);
        auto &cell = cells_[{p, d}];
        if (static_cast<int>(cell.by_l.size()) <= l) cell.by_l.resize(static_cast<std::size_t>(l) + 1);
        cell.by_l[static_cast<std::size_t>(l)] = pi_add(*ctx_, cell.by_l[static_cast<std::size_t>(l)], e);
        cell.trim();
        if (cell.zero()) cells_.erase({p, d});
    }

    const PiElement<R> *entry(Degree p, Degree d, int l) const {
        auto it = cells_.find({p, d});
        if (it == cells_.end() || l < 0 || l > it->second.max_l()) return nullptr;
        return &it->second.by_l[static_cast<std::size_t>(l)];
    }

    // tau_{p,l}: the (p, l) slice summed over grades
    PiElement<R> slice(Degree p, int l) const {
        PiElement<R> acc;
        for (const auto &[key, cell] : cells_) {
            if (!ctx_->equal(key.first, p)) continue;
            if (l <= cell.max_l() && l >= 0) acc = pi_add(*ctx_, acc, cell.by_l[static_cast<std::size_t>(l)]);
        }
        return acc;
    }

    int max_l() const {
        int m = -1;
        for (const auto &[key, cell] : cells_) m = std::max(m, cell.max_l());
        return m;
    }

    GradedSeries scaled(Cx<R> s) const {
        GradedSeries out(ctx_, orient_, ansatz_lattice_);
        if (s == Cx<R>(0)) return out;
        for (const auto &[key, cell] : cells_)
            for (int l = 0; l <= cell.max_l(); ++l)
                out.add(key.first, key.second, l, pi_scale(cell.by_l[static_cast<std::size_t>(l)], s));
        return out;
    }

    friend GradedSeries operator+(GradedSeries a, const GradedSeries &b) {
        for (const auto &[key, cell] : b.cells_)
            for (int l = 0; l <= cell.max_l(); ++l) a.add(key.first, key.second, l, cell.by_l[static_cast<std::size_t>(l)]);
        return a;
    }

private:
    void check_lattice(Degree p, Degree d) const {
        bool ok = ctx_->in_P(p) && (orient_ == Orientation::Plus ? ctx_->in_P_minus(d, p) : ctx_->in_minus_P(d, p));
        if (!ok) throw std::logic_error("GradedSeries: entry escapes the ansatz lattice (mis-declared degree?)");
    }
    void check_homogeneous(Degree d, const PiElement<R> &e) const {
        for (const auto &t : e.omega) {
            Exponent g = t.grade();
            if (!g.on_lattice || !ctx_->equal(g.d, d))
                throw std::logic_error("GradedSeries: sector term is not homogeneous of the entry grade");
        }
        for (const auto &t : e.lambda) {
            if (!t.d.on_lattice || !ctx_->equal(t.d.d, d))
                throw std::logic_error("GradedSeries: layer term is not homogeneous of the entry grade");
        }
    }

    std::shared_ptr<const AngleContext> ctx_;
    Orientation orient_;
    bool ansatz_lattice_;
    CellMap cells_;
    std::optional<std::pair<Direction, Degree>> complete_;
};

// ---- truncation -----------------------------------------------------------

enum class TruncMode { AtMost, AtLeast };

// exact restriction of the grade support; the finite direction (<= on a plus
// series, >= on a minus series) is the only one allowed
template <class R>
GradedSeries<R> truncate(const GradedSeries<R> &s, TruncMode mode, Degree cutoff) {
    if ((mode == TruncMode::AtLeast && s.orientation() == Orientation::Plus) ||
        (mode == TruncMode::AtMost && s.orientation() == Orientation::Minus))
        throw std::invalid_argument("truncate: unbounded truncation request for this orientation");
    GradedSeries<R> out(s.ctx_ptr(), s.orientation(), s.ansatz_lattice());
    for (const auto &[key, cell] : s.cells()) {
        int c = s.ctx().compare(key.second, cutoff);
        bool keep = (mode == TruncMode::AtMost) ? (c <= 0) : (c >= 0);
        if (!keep) continue;
        for (int l = 0; l <= cell.max_l(); ++l) out.add(key.first, key.second, l, cell.by_l[static_cast<std::size_t>(l)]);
    }
    if (auto comp = s.completeness()) out.mark_complete(comp->first, comp->second);
    return out;
}

// ---- operator application -------------------------------------------------

template <class R>
GradedSeries<R> apply_op(const EpsOperator<R> &f, const GradedSeries<R> &s) {
    GradedSeries<R> out(s.ctx_ptr(), s.orientation(), s.ansatz_lattice());
    for (const auto &[key, cell] : s.cells()) {
        for (int l = 0; l <= cell.max_l(); ++l) {
            PiElement<R> img = f.action(cell.by_l[static_cast<std::size_t>(l)]);
            out.add(key.first + f.deg_eps, key.second + f.deg_A, l, img);
        }
    }
    return out;
}

// ---- geometric series of operators -----------------------------------------

namespace detail {

inline Direction find_direction(const AngleContext &ctx, const std::vector<Direction> &prefer,
                                const std::vector<std::pair<Degree, Degree>> &degs) {
    auto valid = [&](Direction v) {
        for (const auto &[pe, pa] : degs) {
            Degree lvl = v.level(pe, pa);
            if (ctx.compare(lvl, Degree{0, 0}) <= 0) return false;
        }
        return true;
    };
    for (Direction v : prefer)
        if (valid(v)) return v;
    for (int vp = -4; vp <= 4; ++vp)
        for (int vd = -4; vd <= 4; ++vd) {
            if (vp == 0 && vd == 0) continue;
            Direction v{vp, vd};
            if (valid(v)) return v;
        }
    throw std::invalid_argument("geometric_series: no direction makes every operator degree positive");
}

} // namespace detail

// Sum over all finite compositions of the given operators applied to the
// seed, computed as a worklist fixed point in increasing level order. Exact
// for every lattice cell with level <= cap; cells beyond the cap are dropped
// (the truncation is recorded on the result). Equals brute-force word
// enumeration on the shared range.
template <class R>
GradedSeries<R> geometric_series_capped(const std::vector<EpsOperator<R>> &ops, const GradedSeries<R> &seed,
                                        Direction v, Degree cap, std::size_t max_cells = 2000000) {
    const AngleContext &ctx = seed.ctx();
    for (const auto &f : ops)
        if (ctx.compare(v.level(f.deg_eps, f.deg_A), Degree{0, 0}) <= 0)
            throw std::invalid_argument("geometric_series: direction does not make every operator degree positive");

    struct LevelKey {
        Degree level, p, d;
    };
    struct LevelLess {
        const AngleContext *c;
        bool operator()(const LevelKey &l, const LevelKey &r) const {
            int cmp = c->compare(l.level, r.level);
            if (cmp != 0) return cmp < 0;
            cmp = c->compare(l.p, r.p);
            if (cmp != 0) return cmp < 0;
            return c->less(l.d, r.d);
        }
    };

    GradedSeries<R> out(seed.ctx_ptr(), seed.orientation(), seed.ansatz_lattice());
    std::map<LevelKey, LnPoly<R>, LevelLess> pending{LevelLess{&ctx}};

    auto push = [&](Degree p, Degree d, int l, const PiElement<R> &e) {
        if (e.zero()) return;
        Degree lvl = v.level(p, d);
        if (ctx.compare(lvl, cap) > 0) return; // beyond the recorded truncation
        auto &cell = pending[LevelKey{lvl, p, d}];
        if (static_cast<int>(cell.by_l.size()) <= l) cell.by_l.resize(static_cast<std::size_t>(l) + 1);
        cell.by_l[static_cast<std::size_t>(l)] = pi_add(ctx, cell.by_l[static_cast<std::size_t>(l)], e);
    };

    for (const auto &[key, cell] : seed.cells())
        for (int l = 0; l <= cell.max_l(); ++l) push(key.first, key.second, l, cell.by_l[static_cast<std::size_t>(l)]);

    std::size_t processed = 0;
    while (!pending.empty()) {
        if (++processed > max_cells)
            throw ResourceError("geometric_series: window exceeds the resource cap");
        auto it = pending.begin();
        LevelKey key = it->first;
        LnPoly<R> cell = std::move(it->second);
        pending.erase(it);
        cell.trim();
        if (cell.zero()) continue;
        for (int l = 0; l <= cell.max_l(); ++l) {
            const PiElement<R> &e = cell.by_l[static_cast<std::size_t>(l)];
            if (e.zero()) continue;
            out.add(key.p, key.d, l, e);
            for (const auto &f : ops) push(key.p + f.deg_eps, key.d + f.deg_A, l, f.action(e));
        }
    }
    out.mark_complete(v, cap);
    return out;
}

// window-driven front end: derives the direction and the level cap from the
// window box, then runs the capped fixed point
template <class R>
GradedSeries<R> geometric_series(const std::vector<EpsOperator<R>> &ops, const GradedSeries<R> &seed,
                                 const Window &window, std::size_t max_cells = 2000000) {
    const AngleContext &ctx = seed.ctx();
    std::vector<std::pair<Degree, Degree>> degs;
    for (const auto &f : ops) degs.emplace_back(f.deg_eps, f.deg_A);
    std::vector<Direction> prefer =
        seed.orientation() == Orientation::Plus ? std::vector<Direction>{{2, 1}} : std::vector<Direction>{{2, -1}};
    Direction v = detail::find_direction(ctx, prefer, degs);
    if (v.vp < 0) throw std::invalid_argument("geometric_series: negative p-direction unsupported");

    Degree cap{v.vp * window.p_max.a, v.vp * window.p_max.b};
    if (v.vd > 0) {
        if (!window.d_max) throw std::invalid_argument("geometric_series: window needs d_max for this operator set");
        cap += Degree{v.vd * window.d_max->a, v.vd * window.d_max->b};
    } else if (v.vd < 0) {
        if (!window.d_min) throw std::invalid_argument("geometric_series: window needs d_min for this operator set");
        cap += Degree{v.vd * window.d_min->a, v.vd * window.d_min->b};
    }
    return geometric_series_capped(ops, seed, v, cap, max_cells);
}

// ---- the scaling operator H_eps --------------------------------------------

enum class ScaleDirection { Forward, Inverse };

namespace detail {

// j-th T-derivative of every polynomial datum of a homogeneous element
template <class R>
PiElement<R> t_derivative(const AngleContext &ctx, const PiElement<R> &e, unsigned j) {
    PiElement<R> out;
    for (const auto &t : e.omega) {
        PolyT<R> p = t.P.derivative(j);
        if (!p.zero()) out.omega.push_back(OmegaTerm<R>{t.q, t.k, std::move(p)});
    }
    for (const auto &t : e.lambda) {
        PolyTY<R> q = t.Q.d_T(j);
        if (!q.zero()) out.lambda.push_back(LambdaTerm<R>{t.d, std::move(q)});
    }
    return normalize(ctx, std::move(out));
}

template <class R>
int max_t_degree(const PiElement<R> &e) {
    int m = 0;
    for (const auto &t : e.omega) m = std::max(m, t.P.degree());
    for (const auto &t : e.lambda) m = std::max(m, t.Q.degree_T());
    return m;
}

} // namespace detail

// Scaling between macroscopic and microscopic variables. Forward sends the
// grade-d entry at eps-power p to eps-power p + d with ln(eps) powers up to
// the T-degree of its polynomials; the inverse shifts p - d with the
// sign-alternating expansion. forward o inverse = id.
template <class R>
GradedSeries<R> scale_heps(const GradedSeries<R> &s, ScaleDirection dir) {
    Orientation flipped = s.orientation() == Orientation::Plus ? Orientation::Minus : Orientation::Plus;
    GradedSeries<R> out(s.ctx_ptr(), flipped, s.ansatz_lattice());
    const AngleContext &ctx = s.ctx();
    for (const auto &[key, cell] : s.cells()) {
        Degree p = key.first, d = key.second;
        Degree p_out = dir == ScaleDirection::Forward ? p + d : p - d;
        for (int l = 0; l <= cell.max_l(); ++l) {
            const PiElement<R> &e = cell.by_l[static_cast<std::size_t>(l)];
            if (e.zero()) continue;
            int m = detail::max_t_degree(e);
            R fact = 1;
            for (int j = 0; j <= m; ++j) {
                if (j > 0) fact *= static_cast<R>(j);
                PiElement<R> dj = detail::t_derivative(ctx, e, static_cast<unsigned>(j));
                if (dj.zero()) continue;
                Cx<R> w(R(1) / fact);
                if (dir == ScaleDirection::Inverse && (j % 2) != 0) w = -w;
                out.add(p_out, d, l + j, pi_scale(std::move(dj), w));
            }
        }
    }
    return out;
}

// ---- projectors -------------------------------------------------------------

// pi^{+-}_sigma: keep only the sigma-coefficient of lattice grades compatible
// with the orientation, re-seeded on phi_d
template <class R>
GradedSeries<R> pi_sigma(const GradedSeries<R> &s) {
    GradedSeries<R> out(s.ctx_ptr(), s.orientation(), s.ansatz_lattice());
    const AngleContext &ctx = s.ctx();
    for (const auto &[key, cell] : s.cells()) {
        Degree p = key.first, d = key.second;
        if (!ctx.in_pi_theta_star(d)) continue;
        bool in_cone = s.orientation() == Orientation::Plus ? ctx.in_P_minus(d, p) : ctx.in_minus_P(d, p);
        if (!ctx.in_P(p) || !in_cone) continue;
        for (int l = 0; l <= cell.max_l(); ++l) {
            Cx<R> c = sigma_d(ctx, cell.by_l[static_cast<std::size_t>(l)], d);
            if (c != Cx<R>(0)) out.add(p, d, l, pi_scale(phi_d<R>(ctx, d), c));
        }
    }
    return out;
}

// max coefficient difference between two series over the union of their cells
template <class R>
R series_diff_norm(const GradedSeries<R> &a, const GradedSeries<R> &b) {
    const AngleContext &ctx = a.ctx();
    R worst = 0;
    auto scan = [&](const GradedSeries<R> &x, const GradedSeries<R> &y) {
        for (const auto &[key, cell] : x.cells()) {
            for (int l = 0; l <= cell.max_l(); ++l) {
                const PiElement<R> *other = y.entry(key.first, key.second, l);
                PiElement<R> empty;
                worst = std::max(worst, pi_diff_norm(ctx, cell.by_l[static_cast<std::size_t>(l)],
                                                     other ? *other : empty));
            }
        }
    };
    scan(a, b);
    scan(b, a);
    return worst;
}

template <class R>
R series_max_abs(const GradedSeries<R> &s) {
    R m = 0;
    for (const auto &[key, cell] : s.cells())
        for (const auto &e : cell.by_l) m = std::max(m, pi_max_abs(e));
    return m;
}

} // namespace cornerlayer

#endif
