#ifndef CORNERLAYER_MATCHING_HPP
#define CORNERLAYER_MATCHING_HPP

#include <future>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "cornerlayer/config.hpp"
#include "cornerlayer/ops.hpp"
#include "cornerlayer/rational.hpp"
#include "cornerlayer/series.hpp"

namespace cornerlayer {

// ---- the operator families R+- ---------------------------------------------

// R+_eps = { -k0^2 R_Delta, -eps^2 R_dYY o dxx|_Lambda, -eps^2 k1^2 R_dYY,
//            eps (mu0/mu1) R_N o dy|_Gamma,y=0+ }
template <class R>
std::vector<EpsOperator<R>> build_Rplus(const ProblemConfig<R> &cfg) {
    const AngleContext *ctx = cfg.ctx.get();
    Cx<R> k0sq = cfg.k0sq, k1sq = cfg.k1sq;
    R mu = cfg.mu_ratio;
    std::vector<EpsOperator<R>> ops;
    ops.push_back({"-k0^2 R_Delta", Degree{0, 0}, Degree::integer(2), [ctx, k0sq](const PiElement<R> &e) {
                       return pi_scale(r_delta(*ctx, e.omega), -k0sq);
                   }});
    ops.push_back({"-eps^2 R_dYY dxx", Degree::integer(2), Degree::integer(-2), [ctx](const PiElement<R> &e) {
                       return pi_scale(r_dyy(*ctx, dxx_lambda(*ctx, e.lambda)), Cx<R>(-1));
                   }});
    ops.push_back({"-eps^2 k1^2 R_dYY", Degree::integer(2), Degree{0, 0}, [ctx, k1sq](const PiElement<R> &e) {
                       return pi_scale(r_dyy(*ctx, e.lambda), -k1sq);
                   }});
    ops.push_back({"eps (mu0/mu1) R_N dy+", Degree::integer(1), Degree::integer(-1),
                   [ctx, mu](const PiElement<R> &e) {
                       return pi_scale(r_neumann(*ctx, dy_gamma_plus(*ctx, e.omega)), Cx<R>(mu));
                   }});
    return ops;
}

// R-_eps: the microscopic-variable family; same actions, eps-degrees shifted
template <class R>
std::vector<EpsOperator<R>> build_Rminus(const ProblemConfig<R> &cfg) {
    std::vector<EpsOperator<R>> ops = build_Rplus(cfg);
    ops[0].deg_eps = Degree::integer(2);  // -eps^2 k0^2 R_Delta
    ops[0].name = "-eps^2 k0^2 R_Delta";
    ops[1].deg_eps = Degree{0, 0};        // -R_dYY dXX
    ops[1].name = "-R_dYY dXX";
    // ops[2] keeps (2, 0)
    ops[3].deg_eps = Degree{0, 0};        // (mu0/mu1) R_N dY+
    ops[3].name = "(mu0/mu1) R_N dY+";
    return ops;
}

// ---- matching coefficient tables --------------------------------------------

enum class MatchKind { uS, Su }; // c^{u<-S} and c^{S<-u}

inline const char *match_kind_name(MatchKind k) { return k == MatchKind::uS ? "uS" : "Su"; }

struct TableWindow {
    Degree p_min = Degree::integer(0);
    Degree p_max = Degree::integer(3);
    Degree d_min = Degree::integer(-3);  // row range (the extracted grade d)
    Degree d_max = Degree::integer(3);
    Degree dp_min = Degree::integer(-3); // seed range (the column d')
    Degree dp_max = Degree::integer(3);
    int l_max = 4;
};

template <class R>
struct MatchTable {
    struct Key {
        Degree d, dp, p;
        int l;
    };
    struct KeyLess {
        const AngleContext *c;
        bool operator()(const Key &x, const Key &y) const {
            int cmp = c->compare(x.d, y.d);
            if (cmp != 0) return cmp < 0;
            cmp = c->compare(x.dp, y.dp);
            if (cmp != 0) return cmp < 0;
            cmp = c->compare(x.p, y.p);
            if (cmp != 0) return cmp < 0;
            return x.l < y.l;
        }
    };
    MatchKind kind = MatchKind::uS;
    std::string fingerprint;
    std::map<Key, Cx<R>, KeyLess> cells;

    explicit MatchTable(const AngleContext *ctx) : cells(KeyLess{ctx}) {}

    Cx<R> get(Degree d, Degree dp, Degree p, int l) const {
        auto it = cells.find(Key{d, dp, p, l});
        return it == cells.end() ? Cx<R>(0) : it->second;
    }
};

// ---- the engine ---------------------------------------------------------------

template <class R>
class MatchingEngine {
public:
    explicit MatchingEngine(ProblemConfig<R> cfg)
        : cfg_(std::move(cfg)), rplus_(build_Rplus(cfg_)), rminus_(build_Rminus(cfg_)) {}

    const ProblemConfig<R> &config() const { return cfg_; }
    const AngleContext &ctx() const { return *cfg_.ctx; }
    const std::vector<EpsOperator<R>> &rplus() const { return rplus_; }
    const std::vector<EpsOperator<R>> &rminus() const { return rminus_; }

    // The scaled seed series behind the matching coefficients:
    //   uS: H^{-1} <R-> (phi_{d'})   read at cell (p, d), level 2p + d
    //   Su: H      <R+> (phi_{d'})   read at cell (p, d), level 2p - d
    // Complete up to the given level cap (recomputed and cached per seed).
    const GradedSeries<R> &seed_series(MatchKind kind, Degree dprime, Degree level_cap) {
        std::scoped_lock lock(memo_mutex_);
        auto &slot = memo_slot(kind, dprime);
        if (!slot.series || ctx().less(slot.cap, level_cap)) {
            slot.series = compute_seed_series(kind, dprime, level_cap);
            slot.cap = level_cap;
        }
        return *slot.series;
    }

    // c^{u<-S}_{d,d',p,l} = sigma_d o tau_{p,l} o H^{-1} o <R-> (phi_{d'})
    // c^{S<-u}_{d,d',p,l} = sigma_d o tau_{p,l} o H     o <R+> (phi_{d'})
    Cx<R> match_coeff(MatchKind kind, Degree d, Degree dprime, Degree p, int l) {
        if (!ctx().in_pi_theta_star(d) || !ctx().in_pi_theta_star(dprime))
            throw std::invalid_argument("match_coeff: d and d' must lie in (pi/Theta)Z*");
        // constraint set: every operator has deg_eps in N and deg_eps -+ deg_A in N
        if (!constraint_ok(kind, d, dprime, p) || l < 0) return Cx<R>(0);
        Degree cap = level_of(kind, p, d);
        const GradedSeries<R> &s = seed_series(kind, dprime, cap);
        const PiElement<R> *cell = s.entry(p, d, l);
        if (cell == nullptr) return Cx<R>(0);
        return sigma_d(ctx(), *cell, d);
    }

    // full table over a window; seeds fan out over workers, merge order fixed
    MatchTable<R> compute_table(MatchKind kind, const TableWindow &twin) {
        MatchTable<R> table(cfg_.ctx.get());
        table.kind = kind;
        table.fingerprint = cfg_.fingerprint;
        std::vector<Degree> seeds =
            ctx().enumerate_pi_theta_star(ctx().value(twin.dp_min), ctx().value(twin.dp_max));
        Degree cap = table_cap(kind, twin);

        int workers = std::max(1, cfg_.data.workers);
        std::vector<GradedSeries<R>> results;
        results.reserve(seeds.size());
        if (workers <= 1 || seeds.size() <= 1) {
            for (Degree dp : seeds) results.push_back(compute_seed_series(kind, dp, cap));
        } else {
            std::vector<std::future<GradedSeries<R>>> futs;
            for (Degree dp : seeds)
                futs.push_back(std::async(std::launch::async,
                                          [this, kind, dp, cap] { return compute_seed_series(kind, dp, cap); }));
            for (auto &f : futs) results.push_back(f.get());
        }
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            harvest(table, kind, seeds[i], results[i], twin);
            std::scoped_lock lock(memo_mutex_);
            auto &slot = memo_slot(kind, seeds[i]);
            if (!slot.series || ctx().less(slot.cap, cap)) {
                slot.series = std::move(results[i]);
                slot.cap = cap;
            }
        }
        return table;
    }

private:
    struct MemoEntry {
        std::optional<GradedSeries<R>> series;
        Degree cap{0, 0};
    };

    bool constraint_ok(MatchKind kind, Degree d, Degree dprime, Degree p) const {
        // uS: p + d in N and p + d' in N; Su: p - d in N and p - d' in N
        Degree a = kind == MatchKind::uS ? p + d : p - d;
        Degree b = kind == MatchKind::uS ? p + dprime : p - dprime;
        return ctx().is_natural(a) && ctx().is_natural(b);
    }

    Degree level_of(MatchKind kind, Degree p, Degree d) const {
        // series cell behind (p, d): uS: (p+d, d) at v=(2,-1); Su: (p-d, d) at v=(2,1)
        if (kind == MatchKind::uS) return Degree{2 * (p.a + d.a) - d.a, 2 * (p.b + d.b) - d.b};
        return Degree{2 * (p.a - d.a) + d.a, 2 * (p.b - d.b) + d.b};
    }

    Degree table_cap(MatchKind kind, const TableWindow &twin) const {
        // max level over the (p, d) corners of the window box
        Degree best{0, 0};
        bool first = true;
        for (Degree p : {twin.p_min, twin.p_max}) {
            for (Degree d : {twin.d_min, twin.d_max}) {
                Degree lvl = level_of(kind, p, d);
                if (first || ctx().less(best, lvl)) {
                    best = lvl;
                    first = false;
                }
            }
        }
        return best;
    }

    MemoEntry &memo_slot(MatchKind kind, Degree dprime) {
        long long key = ctx().rational() ? ctx().rational_key(dprime) : (dprime.a * 1000003LL + dprime.b);
        return memo_[std::make_pair(kind == MatchKind::uS ? 0 : 1, key)];
    }

    GradedSeries<R> compute_seed_series(MatchKind kind, Degree dprime, Degree cap) const {
        bool plus = kind == MatchKind::Su;
        GradedSeries<R> seed(cfg_.ctx, plus ? Orientation::Plus : Orientation::Minus);
        seed.add(Degree{0, 0}, dprime, 0, phi_d<R>(ctx(), dprime));
        Direction v = plus ? Direction{2, 1} : Direction{2, -1};
        GradedSeries<R> sum = geometric_series_capped(plus ? rplus_ : rminus_, seed, v, cap);
        return scale_heps(sum, plus ? ScaleDirection::Forward : ScaleDirection::Inverse);
    }

    void harvest(MatchTable<R> &table, MatchKind kind, Degree dprime, const GradedSeries<R> &scaled,
                 const TableWindow &twin) const {
        for (const auto &[key, cell] : scaled.cells()) {
            Degree p = key.first, d = key.second;
            if (!ctx().in_pi_theta_star(d)) continue;
            if (ctx().less(p, twin.p_min) || ctx().less(twin.p_max, p)) continue;
            if (ctx().less(d, twin.d_min) || ctx().less(twin.d_max, d)) continue;
            for (int l = 0; l <= cell.max_l() && l <= twin.l_max; ++l) {
                Cx<R> c = sigma_d(ctx(), cell.by_l[static_cast<std::size_t>(l)], d);
                if (c != Cx<R>(0)) table.cells[typename MatchTable<R>::Key{d, dprime, p, l}] = c;
            }
        }
    }

    ProblemConfig<R> cfg_;
    std::vector<EpsOperator<R>> rplus_, rminus_;
    std::map<std::pair<int, long long>, MemoEntry> memo_;
    std::mutex memo_mutex_;
};

// ---- block matrices P and Q of the matching condition -------------------------

struct QpReport {
    std::size_t s_cells = 0, u_cells = 0;
    double max_qp_dev = 0.0;   // max |(QP - I)| over the S-window
    double max_diag_dev = 0.0; // max |Q_{(p+d,d,l),(p,d,l)} - 1| over positive-grade u-cells
    bool pass = false;
};

// Verifies that Q o P = id on the S-ledger window (the intermediate u-cells
// needed for exactness are covered by construction), and that the shifted
// diagonal of Q++ is exactly ones.
template <class R>
QpReport matching_matrices_check(MatchingEngine<R> &eng, Degree p_max, Degree d_abs, int l_max) {
    const AngleContext &ctx = eng.ctx();
    struct Cell {
        Degree p, d;
        int l;
    };
    double d_abs_v = ctx.value(d_abs);
    double pb_v = ctx.value(p_max) + d_abs_v;

    // S-window cells: p in P, d in (pi/Theta)Z* cap (p - P), |d| <= d_abs
    std::vector<Cell> s_cells;
    for (Degree p : ctx.enumerate_P_upto(p_max))
        for (Degree d : ctx.enumerate_pi_theta_star(-d_abs_v, d_abs_v)) {
            if (!ctx.in_minus_P(d, p)) continue;
            for (int l = 0; l <= l_max; ++l) s_cells.push_back({p, d, l});
        }
    // intermediate u-cells: p' in P cap [0, p_max + d_abs], d' lattice with |d'| <= pb
    std::vector<Cell> u_cells;
    for (Degree p : ctx.enumerate_P_upto(p_max + d_abs))
        for (Degree d : ctx.enumerate_pi_theta_star(-pb_v, pb_v)) {
            if (!ctx.in_P_minus(d, p)) continue;
            for (int l = 0; l <= l_max; ++l) u_cells.push_back({p, d, l});
        }

    // tables covering both factors of Q o P:
    //   P entry: c^{u<-S}_{mid.d, col.d, mid.p - col.p, mid.l - col.l}
    //   Q entry: c^{S<-u}_{row.d, mid.d, row.p - mid.p, row.l - mid.l}
    Degree pb = p_max + d_abs;
    TableWindow uS_win;
    uS_win.p_min = Degree{0, 0} - p_max;
    uS_win.p_max = pb;
    uS_win.d_min = Degree{0, 0} - pb;
    uS_win.d_max = pb;
    uS_win.dp_min = Degree{0, 0} - d_abs;
    uS_win.dp_max = d_abs;
    uS_win.l_max = l_max;
    MatchTable<R> t_uS = eng.compute_table(MatchKind::uS, uS_win);
    TableWindow Su_win;
    Su_win.p_min = Degree{0, 0} - pb;
    Su_win.p_max = pb; // wide enough for the shifted-diagonal cells (p = d)
    Su_win.d_min = Degree{0, 0} - pb;
    Su_win.d_max = pb;
    Su_win.dp_min = Degree{0, 0} - pb;
    Su_win.dp_max = pb;
    Su_win.l_max = l_max;
    MatchTable<R> t_Su = eng.compute_table(MatchKind::Su, Su_win);

    QpReport rep;
    rep.s_cells = s_cells.size();
    rep.u_cells = u_cells.size();

    for (const auto &row : s_cells) {
        for (const auto &col : s_cells) {
            Cx<R> acc(0);
            for (const auto &mid : u_cells) {
                if (mid.l < col.l || mid.l > row.l) continue;
                Cx<R> q = t_Su.get(row.d, mid.d, row.p - mid.p, row.l - mid.l);
                if (q == Cx<R>(0)) continue;
                Cx<R> pm = t_uS.get(mid.d, col.d, mid.p - col.p, mid.l - col.l);
                if (pm == Cx<R>(0)) continue;
                acc += q * pm;
            }
            bool diag = ctx.equal(row.p, col.p) && ctx.equal(row.d, col.d) && row.l == col.l;
            double dev = static_cast<double>(std::abs(acc - (diag ? Cx<R>(1) : Cx<R>(0))));
            rep.max_qp_dev = std::max(rep.max_qp_dev, dev);
        }
    }
    // shifted diagonal of Q++: the u-cell (p, d, l) with d > 0 feeds the S-cell
    // (p + d, d, l) with coefficient c^{S<-u}_{d,d,d,0} = 1
    for (const auto &mid : u_cells) {
        if (!(ctx.value(mid.d) > 0)) continue;
        Cx<R> q = t_Su.get(mid.d, mid.d, mid.d, 0);
        rep.max_diag_dev =
            std::max(rep.max_diag_dev, static_cast<double>(std::abs(q - Cx<R>(1))));
    }
    rep.pass = rep.max_qp_dev < eng.config().data.tol.qp_identity &&
               rep.max_diag_dev < eng.config().data.tol.match_unit;
    return rep;
}

// ---- layer correctors and tangent coefficients --------------------------------

// U_n as a polynomial in Y (float path): (mu0/mu1) V_n
template <class R>
PolyTY<R> layer_corrector(const ProblemConfig<R> &cfg, int n) {
    static thread_local std::vector<RatPoly> cache;
    if (static_cast<int>(cache.size()) <= n) cache = layer_corrector_profiles(n);
    PolyTY<R> out;
    const RatPoly &v = cache[static_cast<std::size_t>(n)];
    for (std::size_t k = 0; k < v.size(); ++k)
        out.add(0, static_cast<int>(k), Cx<R>(cfg.mu_ratio * static_cast<R>(rat_to_double(v[k]))));
    return out;
}

// T_n, exact rational
inline BigRational tangent_coeff(int n) {
    auto t = tangent_coefficients(n);
    return t[static_cast<std::size_t>(n)];
}

// U_{p,l}(x, Y) = sum_n traces[n](x) * U_n(Y), traces[n] representing
// (dxx + k1^2)^n dy u_{p-1-2n, l} on the interface
template <class R>
LambdaElement<R> layer_field_from_traces(const ProblemConfig<R> &cfg, const std::vector<GammaElement<R>> &traces) {
    LambdaElement<R> out;
    for (std::size_t n = 0; n < traces.size(); ++n) {
        PolyTY<R> un = layer_corrector(cfg, static_cast<int>(n));
        for (const auto &g : traces[n]) {
            PolyTY<R> q = PolyTY<R>::from_T(g.Q) * un;
            if (!q.zero()) out.push_back(LambdaTerm<R>{g.d, std::move(q)});
        }
    }
    return normalize(*cfg.ctx, std::move(out));
}

// ---- the sigma ledger -----------------------------------------------------------

enum class FieldTag { Far, Corner };
enum class Provenance { Computed, Ingested, ZeroByLattice };

inline const char *field_tag_name(FieldTag f) { return f == FieldTag::Far ? "far" : "corner"; }

// Table of singularity coefficients sigma_d(u0_{p,l}) (far) and
// sigma_d(Sinf_{p,l}) (corner) over the (p, d, l) lattice.
template <class R>
class SigmaLedger {
public:
    struct Key {
        FieldTag f;
        Degree p, d;
        int l;
    };
    struct KeyLess {
        const AngleContext *c;
        bool operator()(const Key &x, const Key &y) const {
            if (x.f != y.f) return x.f < y.f;
            int cmp = c->compare(x.p, y.p);
            if (cmp != 0) return cmp < 0;
            cmp = c->compare(x.d, y.d);
            if (cmp != 0) return cmp < 0;
            return x.l < y.l;
        }
    };
    struct Cell {
        Cx<R> value;
        Provenance prov;
    };
    using Map = std::map<Key, Cell, KeyLess>;

    explicit SigmaLedger(std::shared_ptr<const AngleContext> ctx)
        : ctx_(std::move(ctx)), cells_(KeyLess{ctx_.get()}) {}

    const AngleContext &ctx() const { return *ctx_; }
    std::shared_ptr<const AngleContext> ctx_ptr() const { return ctx_; }
    const Map &cells() const { return cells_; }

    // lattice admissibility: far cells need d in (pi/Theta)Z* cap (P - p),
    // corner cells d in (pi/Theta)Z* cap (p - P)
    bool admissible(FieldTag f, Degree p, Degree d) const {
        if (!ctx_->in_P(p) || !ctx_->in_pi_theta_star(d)) return false;
        return f == FieldTag::Far ? ctx_->in_P_minus(d, p) : ctx_->in_minus_P(d, p);
    }

    void set(FieldTag f, Degree p, Degree d, int l, Cx<R> v, Provenance prov) {
        if (!admissible(f, p, d))
            throw std::invalid_argument("SigmaLedger: cell violates the support lattice");
        if (l < 0) throw std::invalid_argument("SigmaLedger: l must be a natural number");
        cells_[Key{f, p, d, l}] = Cell{v, prov};
    }

    const Cell *find(FieldTag f, Degree p, Degree d, int l) const {
        auto it = cells_.find(Key{f, p, d, l});
        return it == cells_.end() ? nullptr : &it->second;
    }

    Cx<R> value_or_zero(FieldTag f, Degree p, Degree d, int l) const {
        const Cell *c = find(f, p, d, l);
        return c ? c->value : Cx<R>(0);
    }

private:
    std::shared_ptr<const AngleContext> ctx_;
    Map cells_;
};

// supplies the variational cells (far d > 0, corner d < 0): a value, or
// nullopt to signal a data gap
template <class R>
using IngestCallback = std::function<std::optional<Cx<R>>(FieldTag, Degree p, Degree d, int l)>;

template <class R>
IngestCallback<R> zero_ingest() {
    return [](FieldTag, Degree, Degree, int) { return std::optional<Cx<R>>(Cx<R>(0)); };
}

// Fills every singular cell (far d < 0, corner d > 0) up to p <= P_max by the
// convolution formulas, walking p upward along the lattice. Variational cells
// are pulled through `ingest` and recorded with Ingested provenance.
template <class R>
SigmaLedger<R> sigma_recursion(MatchingEngine<R> &eng, Degree p_max, int l_max, const IngestCallback<R> &ingest) {
    const AngleContext &ctx = eng.ctx();
    SigmaLedger<R> ledger(eng.config().ctx);

    std::vector<std::string> gaps;
    auto variational = [&](FieldTag f, Degree p, Degree d, int l) -> Cx<R> {
        if (const auto *cell = ledger.find(f, p, d, l)) return cell->value;
        auto v = ingest(f, p, d, l);
        if (!v.has_value()) {
            std::ostringstream os;
            os << field_tag_name(f) << " p=(" << p.a << "," << p.b << ") d=(" << d.a << "," << d.b << ") l=" << l;
            gaps.push_back(os.str());
            return Cx<R>(0);
        }
        ledger.set(f, p, d, l, *v, Provenance::Ingested);
        return *v;
    };

    // far singular cell: sigma_d(u_{p,l}) = sum_{p' in [[0, p+d]]}
    //   sum_{d' lattice, p'-d' in [[0,p]]} sum_{l'<=l} c^{u<-S} * sigma_{d'}(Sinf_{p',l'})
    auto far_cell = [&](Degree p, Degree d, int l) -> Cx<R> {
        Cx<R> acc(0);
        for (Degree pp : ctx.enumerate_interval(Degree{0, 0}, p + d)) {
            double lo = ctx.value(pp) - ctx.value(p);
            for (Degree dp : ctx.enumerate_pi_theta_star(lo - 1e-9, ctx.value(pp) + 1e-9)) {
                // p' - d' in [[0, p]] means p' - d' in P and p - (p' - d') in N
                Degree diff = pp - dp;
                if (!ctx.in_P(diff) || !ctx.is_natural(p - diff)) continue;
                for (int lp = 0; lp <= l; ++lp) {
                    Cx<R> s = ctx.value(dp) > 0
                                  ? ledger.value_or_zero(FieldTag::Corner, pp, dp, lp)
                                  : variational(FieldTag::Corner, pp, dp, lp);
                    if (s == Cx<R>(0)) continue;
                    Cx<R> c = eng.match_coeff(MatchKind::uS, d, dp, p - pp, l - lp);
                    acc += c * s;
                }
            }
        }
        return acc;
    };
    // corner singular cell: sigma_d(Sinf_{p,l}) via c^{S<-u} and far cells
    auto corner_cell = [&](Degree p, Degree d, int l) -> Cx<R> {
        Cx<R> acc(0);
        for (Degree pp : ctx.enumerate_interval(Degree{0, 0}, p - d)) {
            double hi = ctx.value(p) - ctx.value(pp);
            for (Degree dp : ctx.enumerate_pi_theta_star(-ctx.value(pp) - 1e-9, hi + 1e-9)) {
                Degree sum = pp + dp;
                if (!ctx.in_P(sum) || !ctx.is_natural(p - sum)) continue;
                for (int lp = 0; lp <= l; ++lp) {
                    Cx<R> s = ctx.value(dp) < 0
                                  ? ledger.value_or_zero(FieldTag::Far, pp, dp, lp)
                                  : variational(FieldTag::Far, pp, dp, lp);
                    if (s == Cx<R>(0)) continue;
                    Cx<R> c = eng.match_coeff(MatchKind::Su, d, dp, p - pp, l - lp);
                    acc += c * s;
                }
            }
        }
        return acc;
    };

    for (Degree p : ctx.enumerate_P_upto(p_max)) {
        // far: d in -pi/Theta N* with d >= -p (empty index set below that)
        for (Degree d : ctx.enumerate_pi_theta_star(-ctx.value(p) - 1e-9, -1e-9))
            for (int l = 0; l <= l_max; ++l) {
                Cx<R> v = far_cell(p, d, l);
                if (ledger.admissible(FieldTag::Far, p, d))
                    ledger.set(FieldTag::Far, p, d, l, v, Provenance::Computed);
            }
        // corner: d in pi/Theta N* with d <= p
        for (Degree d : ctx.enumerate_pi_theta_star(1e-9, ctx.value(p) + 1e-9))
            for (int l = 0; l <= l_max; ++l) {
                Cx<R> v = corner_cell(p, d, l);
                if (ledger.admissible(FieldTag::Corner, p, d))
                    ledger.set(FieldTag::Corner, p, d, l, v, Provenance::Computed);
            }
    }
    if (!gaps.empty()) {
        std::ostringstream os;
        os << "sigma_recursion: missing ingested cells:";
        for (const auto &g : gaps) os << "\n  " << g;
        throw DataGapError(os.str());
    }
    return ledger;
}

// ---- corner profiles and the composite corner coefficients ---------------------

// ingested sigma_{d1}(Sinf_{d2,n}) data for d1 < 0 (numerical corner-profile
// output); zero mode stands in when no data is available
template <class R>
class CornerProfiles {
public:
    struct Key {
        Degree d1, d2;
        int n;
    };
    struct KeyLess {
        const AngleContext *c;
        bool operator()(const Key &x, const Key &y) const {
            int cmp = c->compare(x.d1, y.d1);
            if (cmp != 0) return cmp < 0;
            cmp = c->compare(x.d2, y.d2);
            if (cmp != 0) return cmp < 0;
            return x.n < y.n;
        }
    };

    explicit CornerProfiles(std::shared_ptr<const AngleContext> ctx, bool zero_mode = true)
        : ctx_(std::move(ctx)), zero_mode_(zero_mode), cells_(KeyLess{ctx_.get()}) {}

    bool zero_mode() const { return zero_mode_; }
    void set(Degree d1, Degree d2, int n, Cx<R> v) { cells_[Key{d1, d2, n}] = v; }

    // d1 > 0 cells reduce exactly: sigma_{d1}(Sinf_{d2,n}) = delta_{d1,d2} delta_{n,0}
    Cx<R> get(Degree d1, Degree d2, int n, std::vector<std::string> *gaps) const {
        if (ctx_->value(d1) > 0)
            return (ctx_->equal(d1, d2) && n == 0) ? Cx<R>(1) : Cx<R>(0);
        if (zero_mode_) return Cx<R>(0);
        auto it = cells_.find(Key{d1, d2, n});
        if (it != cells_.end()) return it->second;
        if (gaps) {
            std::ostringstream os;
            os << "profile d1=(" << d1.a << "," << d1.b << ") d2=(" << d2.a << "," << d2.b << ") n=" << n;
            gaps->push_back(os.str());
        }
        return Cx<R>(0);
    }

private:
    std::shared_ptr<const AngleContext> ctx_;
    bool zero_mode_;
    std::map<Key, Cx<R>, KeyLess> cells_;
};

// c^{u<-u}_{d,d',p,l}: the triple convolution through the corner profiles plus
// the pure product line (which drops whenever d - d' is outside Z cap (pi/Theta)Z)
template <class R>
Cx<R> corner_coeff(MatchingEngine<R> &eng, Degree d, Degree dprime, Degree p, int l,
                   const CornerProfiles<R> &profiles) {
    const AngleContext &ctx = eng.ctx();
    if (!(ctx.value(d) < 0) || !ctx.in_pi_theta_star(d) || !ctx.in_pi_theta_star(dprime))
        throw std::invalid_argument("corner_coeff: d must be a negative lattice degree");
    // p must sit in P + 2 pi/Theta
    if (!ctx.in_P(p - Degree::pi_over_theta(2))) return Cx<R>(0);

    std::vector<std::string> gaps;
    Cx<R> acc(0);

    // profile line: p1 + p2 + 2n = p, d1 in -pi/Theta N* with p1 + d1 in N,
    // d2 in pi/Theta N* with p2 - d2 in N; every d1 < 0 profile value is 0 in
    // zero mode, so the whole line drops there
    if (!profiles.zero_mode()) {
        double pv = ctx.value(p);
        for (int n = 0; 2 * n <= pv + ctx.value(d) - ctx.value(dprime) + 1e-9; ++n) {
            Degree rest = p - Degree::integer(2 * n); // p1 + p2
            // p1 = a1 - d with a1 in N
            for (long long a1 = 0; static_cast<double>(a1) <= ctx.value(rest + d) - ctx.value(dprime) + 1e-9; ++a1) {
                Degree p1 = Degree::integer(a1) - d;
                Degree p2 = rest - p1;
                if (!ctx.is_natural(p2 - dprime)) continue;
                for (Degree d1 : ctx.enumerate_pi_theta_star(-ctx.value(p1) - 1e-9, -1e-9)) {
                    if (!ctx.is_natural(p1 + d1)) continue;
                    for (Degree d2 : ctx.enumerate_pi_theta_star(1e-9, ctx.value(p2) + 1e-9)) {
                        if (!ctx.is_natural(p2 - d2)) continue;
                        Cx<R> prof = profiles.get(d1, d2, n, &gaps);
                        if (prof == Cx<R>(0)) continue;
                        for (int l1 = 0; l1 <= l; ++l1) {
                            Cx<R> a = eng.match_coeff(MatchKind::uS, d, d1, p1, l1);
                            if (a == Cx<R>(0)) continue;
                            Cx<R> b = eng.match_coeff(MatchKind::Su, d2, dprime, p2, l - l1);
                            acc += a * prof * b;
                        }
                    }
                }
            }
        }
    }

    // pure product line: p1 + p2 = p, d1 in pi/Theta N* with p1 + d1 in N and
    // p2 - d1 in N; vanishes unless d - d' in Z cap (pi/Theta)Z
    if (ctx.in_Z(d - dprime) && ctx.in_pi_theta(d - dprime)) {
        for (long long a1 = 0; static_cast<double>(a1) <= ctx.value(p + d) - ctx.value(dprime) + 1e-9; ++a1) {
            Degree p1 = Degree::integer(a1) - d;
            Degree p2 = p - p1;
            if (!ctx.is_natural(p2 - dprime)) continue;
            for (Degree d1 : ctx.enumerate_pi_theta_star(1e-9, ctx.value(p2) + 1e-9)) {
                if (!ctx.is_natural(p1 + d1) || !ctx.is_natural(p2 - d1)) continue;
                for (int l1 = 0; l1 <= l; ++l1) {
                    Cx<R> a = eng.match_coeff(MatchKind::uS, d, d1, p1, l1);
                    if (a == Cx<R>(0)) continue;
                    Cx<R> b = eng.match_coeff(MatchKind::Su, d1, dprime, p2, l - l1);
                    acc += a * b;
                }
            }
        }
    }

    if (!gaps.empty()) {
        std::ostringstream os;
        os << "corner_coeff: missing corner-profile cells:";
        for (const auto &g : gaps) os << "\n  " << g;
        throw DataGapError(os.str());
    }
    return acc;
}

// ---- total-field series from a ledger -------------------------------------------

// u0 series: <R+_eps> applied to the sigma-weighted phi_d seed from the far cells
template <class R>
GradedSeries<R> build_u0_series(MatchingEngine<R> &eng, const SigmaLedger<R> &ledger, const Window &window) {
    GradedSeries<R> seed(eng.config().ctx, Orientation::Plus, true);
    const AngleContext &ctx = eng.ctx();
    for (const auto &[key, cell] : ledger.cells()) {
        if (key.f != FieldTag::Far) continue;
        if (cell.value == Cx<R>(0)) continue;
        if (ctx.less(window.p_max, key.p)) continue;
        seed.add(key.p, key.d, key.l, pi_scale(phi_d<R>(ctx, key.d), cell.value));
    }
    return geometric_series(eng.rplus(), seed, window);
}

// Sinf series: <R-_eps> applied to the corner cells
template <class R>
GradedSeries<R> build_Sinf_series(MatchingEngine<R> &eng, const SigmaLedger<R> &ledger, const Window &window) {
    GradedSeries<R> seed(eng.config().ctx, Orientation::Minus, true);
    const AngleContext &ctx = eng.ctx();
    for (const auto &[key, cell] : ledger.cells()) {
        if (key.f != FieldTag::Corner) continue;
        if (cell.value == Cx<R>(0)) continue;
        if (ctx.less(window.p_max, key.p)) continue;
        seed.add(key.p, key.d, key.l, pi_scale(phi_d<R>(ctx, key.d), cell.value));
    }
    return geometric_series(eng.rminus(), seed, window);
}

// ---- graded residuals of the defining systems -----------------------------------

// max coefficient magnitude of the graded Helmholtz system applied to a u0
// series, over cells whose source cells all sit inside the completeness cone
template <class R>
R u0_residual_max(const MatchingEngine<R> &eng, const GradedSeries<R> &s) {
    const AngleContext &ctx = s.ctx();
    const ProblemConfig<R> &cfg = eng.config();
    auto comp = s.completeness();
    if (!comp) throw std::invalid_argument("residual: series carries no completeness marker");
    auto inside = [&](Degree p, Degree d) { return ctx.compare(comp->first.level(p, d), comp->second) <= 0; };
    auto cell_at = [&](Degree p, Degree d, int l) -> PiElement<R> {
        const PiElement<R> *e = s.entry(p, d, l);
        return e ? *e : PiElement<R>{};
    };
    R worst = 0;
    Degree two = Degree::integer(2), one = Degree::integer(1);
    for (const auto &[key, cell] : s.cells()) {
        Degree p = key.first, d = key.second;
        for (int l = 0; l <= cell.max_l(); ++l) {
            // Omega: mu0 Delta u_{p, d+2, l} + omega^2 rho0 u_{p, d, l} = 0
            if (inside(p, d + two)) {
                OmegaElement<R> res = laplacian_omega(ctx, cell_at(p, d + two, l).omega);
                for (auto &t : res) t.P *= Cx<R>(cfg.mu0);
                for (const auto &t : cell_at(p, d, l).omega) {
                    OmegaTerm<R> u = t;
                    u.P *= cfg.omega * cfg.omega * Cx<R>(cfg.rho0);
                    res.push_back(std::move(u));
                }
                res = normalize(ctx, std::move(res));
                for (const auto &t : res) worst = std::max(worst, t.P.max_abs());
            }
            // Lambda: mu1 dYY u_{p,d,l} + mu1 dxx u_{p-2,d+2,l} + omega^2 rho1 u_{p-2,d,l} = 0
            if (inside(p, d) && inside(p - two, d + two) && inside(p - two, d)) {
                LambdaElement<R> res = dyy_lambda(ctx, cell_at(p, d, l).lambda);
                for (auto &t : res) t.Q *= Cx<R>(cfg.mu1);
                for (auto t : dxx_lambda(ctx, cell_at(p - two, d + two, l).lambda)) {
                    t.Q *= Cx<R>(cfg.mu1);
                    res.push_back(std::move(t));
                }
                for (auto t : cell_at(p - two, d, l).lambda) {
                    t.Q *= cfg.omega * cfg.omega * Cx<R>(cfg.rho1);
                    res.push_back(std::move(t));
                }
                res = normalize(ctx, std::move(res));
                for (const auto &t : res) worst = std::max(worst, t.Q.max_abs());
            }
            // Gamma: mu1 dY u_{p,d,l}|0- - mu0 dy u_{p-1,d+1,l}|0+ = 0
            if (inside(p, d) && inside(p - one, d + one)) {
                GammaElement<R> res = dy_gamma_minus(ctx, cell_at(p, d, l).lambda);
                for (auto &t : res) t.Q *= Cx<R>(cfg.mu1);
                for (auto t : dy_gamma_plus(ctx, cell_at(p - one, d + one, l).omega)) {
                    t.Q *= Cx<R>(-cfg.mu0);
                    res.push_back(std::move(t));
                }
                res = normalize(ctx, std::move(res));
                for (const auto &t : res) worst = std::max(worst, t.Q.max_abs());
            }
        }
    }
    return worst;
}

// graded residual of the corner-field system on a Sinf series
template <class R>
R sinf_residual_max(const MatchingEngine<R> &eng, const GradedSeries<R> &s) {
    const AngleContext &ctx = s.ctx();
    const ProblemConfig<R> &cfg = eng.config();
    auto comp = s.completeness();
    if (!comp) throw std::invalid_argument("residual: series carries no completeness marker");
    auto inside = [&](Degree p, Degree d) { return ctx.compare(comp->first.level(p, d), comp->second) <= 0; };
    auto cell_at = [&](Degree p, Degree d, int l) -> PiElement<R> {
        const PiElement<R> *e = s.entry(p, d, l);
        return e ? *e : PiElement<R>{};
    };
    R worst = 0;
    Degree two = Degree::integer(2), one = Degree::integer(1);
    for (const auto &[key, cell] : s.cells()) {
        Degree p = key.first, d = key.second;
        for (int l = 0; l <= cell.max_l(); ++l) {
            // Omega: mu0 Delta S_{p,d+2,l} + omega^2 rho0 S_{p-2,d,l} = 0
            if (inside(p, d + two) && inside(p - two, d)) {
                OmegaElement<R> res = laplacian_omega(ctx, cell_at(p, d + two, l).omega);
                for (auto &t : res) t.P *= Cx<R>(cfg.mu0);
                for (auto t : cell_at(p - two, d, l).omega) {
                    t.P *= cfg.omega * cfg.omega * Cx<R>(cfg.rho0);
                    res.push_back(std::move(t));
                }
                res = normalize(ctx, std::move(res));
                for (const auto &t : res) worst = std::max(worst, t.P.max_abs());
            }
            // Lambda: mu1 dYY S_{p,d,l} + mu1 dXX S_{p,d+2,l} + omega^2 rho1 S_{p-2,d,l} = 0
            if (inside(p, d) && inside(p, d + two) && inside(p - two, d)) {
                LambdaElement<R> res = dyy_lambda(ctx, cell_at(p, d, l).lambda);
                for (auto &t : res) t.Q *= Cx<R>(cfg.mu1);
                for (auto t : dxx_lambda(ctx, cell_at(p, d + two, l).lambda)) {
                    t.Q *= Cx<R>(cfg.mu1);
                    res.push_back(std::move(t));
                }
                for (auto t : cell_at(p - two, d, l).lambda) {
                    t.Q *= cfg.omega * cfg.omega * Cx<R>(cfg.rho1);
                    res.push_back(std::move(t));
                }
                res = normalize(ctx, std::move(res));
                for (const auto &t : res) worst = std::max(worst, t.Q.max_abs());
            }
            // Gamma: mu0 dY S_{p,d+1,l}|0+ - mu1 dY S_{p,d,l}|0- = 0
            if (inside(p, d) && inside(p, d + one)) {
                GammaElement<R> res = dy_gamma_plus(ctx, cell_at(p, d + one, l).omega);
                for (auto &t : res) t.Q *= Cx<R>(cfg.mu0);
                for (auto t : dy_gamma_minus(ctx, cell_at(p, d, l).lambda)) {
                    t.Q *= Cx<R>(-cfg.mu1);
                    res.push_back(std::move(t));
                }
                res = normalize(ctx, std::move(res));
                for (const auto &t : res) worst = std::max(worst, t.Q.max_abs());
            }
        }
    }
    return worst;
}

} // namespace cornerlayer

#endif
