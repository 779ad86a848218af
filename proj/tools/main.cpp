// Command-line front end: configure a problem, compute and export coefficient
// tables, layer correctors and expansion series, and run the verification
// suite.
//
// Exit codes: 0 ok, 2 config error, 3 data gap, 4 check failure, 5 resource cap.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "cornerlayer/check.hpp"
#include "cornerlayer/io.hpp"
#include "cornerlayer/matching.hpp"
#include "cornerlayer/oracle.hpp"

using namespace cornerlayer;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string window_spec;
    std::string kind = "uS";
    std::string ledger_path;
    bool zero_ledger = false;
    std::string profiles_path;
    std::string precision;
    int workers = 0;
    std::string suite = "all";
    std::string format = "csv";
    std::string field = "u0";
    int n_max = 8;
};

ConfigData load_config(const CliOptions &opt) {
    ConfigData c = opt.config_path.empty() ? ConfigData{} : load_config_file(opt.config_path);
    if (!opt.precision.empty()) {
        if (opt.precision == "double") c.precision = Precision::Double;
        else if (opt.precision == "extended") c.precision = Precision::Extended;
        else throw ConfigError("precision: expected double or extended");
    }
    if (opt.workers > 0) c.workers = opt.workers;
    if (!opt.window_spec.empty()) c.window = parse_window(opt.window_spec, c.window);
    c.validate();
    return c;
}

RunManifest make_manifest(const std::string &command, const ConfigData &c, const CliOptions &opt) {
    RunManifest m;
    m.command = command;
    m.config = c;
    if (!opt.config_path.empty()) m.inputs.push_back(opt.config_path);
    if (!opt.ledger_path.empty()) m.inputs.push_back(opt.ledger_path);
    if (!opt.profiles_path.empty()) m.inputs.push_back(opt.profiles_path);
    if (!opt.out_path.empty()) m.outputs.push_back(opt.out_path);
    return m;
}

TableWindow table_window_from(const ConfigData &c) {
    TableWindow t;
    const Window &w = c.window;
    Degree dmax = w.d_max.value_or(w.p_max);
    Degree dmin = w.d_min.value_or(Degree{0, 0} - w.p_max);
    t.p_min = Degree{0, 0} - dmax;
    t.p_max = w.p_max;
    t.d_min = dmin;
    t.d_max = dmax;
    t.dp_min = dmin;
    t.dp_max = dmax;
    t.l_max = c.l_max;
    return t;
}

template <class R>
int run_match_coeffs(const ConfigData &c, const CliOptions &opt) {
    auto t0 = std::chrono::steady_clock::now();
    auto cfg = ProblemConfig<R>::make(c);
    MatchingEngine<R> eng(cfg);
    TableWindow twin = table_window_from(c);
    MatchTable<R> table(cfg.ctx.get());
    if (opt.kind == "uS" || opt.kind == "Su") {
        table = eng.compute_table(opt.kind == "uS" ? MatchKind::uS : MatchKind::Su, twin);
    } else if (opt.kind == "uu") {
        // composite corner coefficients on the window lattice
        CornerProfiles<R> profiles = opt.profiles_path.empty()
                                         ? CornerProfiles<R>(cfg.ctx, true)
                                         : profiles_from_csv<R>(cfg.ctx, read_file(opt.profiles_path));
        const AngleContext &ctx = *cfg.ctx;
        table.kind = MatchKind::uS;
        table.fingerprint = cfg.fingerprint;
        for (Degree d : ctx.enumerate_pi_theta_star(ctx.value(twin.d_min), -1e-9))
            for (Degree dp : ctx.enumerate_pi_theta_star(ctx.value(twin.dp_min), ctx.value(twin.dp_max)))
                for (Degree p : ctx.enumerate_P_upto(twin.p_max))
                    for (int l = 0; l <= twin.l_max; ++l) {
                        Cx<R> v = corner_coeff(eng, d, dp, p, l, profiles);
                        if (v != Cx<R>(0)) table.cells[typename MatchTable<R>::Key{d, dp, p, l}] = v;
                    }
    } else {
        throw ConfigError("kind: expected uS, Su or uu");
    }
    RunManifest man = make_manifest("match-coeffs", c, opt);
    man.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    man.finalize();
    if (opt.format == "csv") {
        write_file(opt.out_path, table_to_csv(table, man.hash));
    } else {
        write_file(opt.out_path, table_to_json(table, man.hash).dump(2) + "\n");
    }
    write_manifest(man, opt.out_path);
    std::printf("wrote %zu cells to %s (fingerprint %s)\n", table.cells.size(), opt.out_path.c_str(),
                table.fingerprint.c_str());
    return 0;
}

template <class R>
int run_layer_correctors(const ConfigData &c, const CliOptions &opt) {
    auto t0 = std::chrono::steady_clock::now();
    auto cfg = ProblemConfig<R>::make(c);
    auto profiles = layer_corrector_profiles(opt.n_max);
    auto tangents = tangent_coefficients(opt.n_max);
    std::ostringstream os;
    os << "n,u_n_at_0,t_n_exact,coefficients...\n";
    for (int n = 0; n <= opt.n_max; ++n) {
        const RatPoly &v = profiles[static_cast<std::size_t>(n)];
        double at0 = static_cast<double>(cfg.mu_ratio) * rat_to_double(rat_eval(v, BigRational(0)));
        os << n << ',' << fmt_real(at0) << ',' << rat_to_string(tangents[static_cast<std::size_t>(n)]);
        for (const auto &coeff : v) os << ',' << fmt_real(static_cast<double>(cfg.mu_ratio) * rat_to_double(coeff));
        os << '\n';
    }
    RunManifest man = make_manifest("layer-correctors", c, opt);
    man.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    man.finalize();
    write_file(opt.out_path, "# manifest=" + man.hash + "\n" + os.str());
    write_manifest(man, opt.out_path);
    std::printf("wrote %d correctors to %s\n", opt.n_max + 1, opt.out_path.c_str());
    return 0;
}

template <class R>
int run_expand(const ConfigData &c, const CliOptions &opt) {
    auto t0 = std::chrono::steady_clock::now();
    auto cfg = ProblemConfig<R>::make(c);
    MatchingEngine<R> eng(cfg);
    SigmaLedger<R> ledger(cfg.ctx);
    Window w = c.window;
    if (!w.d_max) w.d_max = w.p_max + Degree::integer(2);
    if (!w.d_min) w.d_min = Degree{0, 0} - (w.p_max + Degree::integer(2));
    if (!opt.zero_ledger) {
        auto lf = load_ledger_file<R>(cfg.ctx, opt.ledger_path);
        ledger = lf.cells;
        if (lf.strict) {
            // a strict ledger must cover every admissible window cell
            const AngleContext &ctx = *cfg.ctx;
            FieldTag tag = opt.field == "Sinf" ? FieldTag::Corner : FieldTag::Far;
            std::ostringstream gaps;
            int missing = 0;
            for (Degree p : ctx.enumerate_P_upto(w.p_max))
                for (Degree d : ctx.enumerate_pi_theta_star(ctx.value(*w.d_min), ctx.value(*w.d_max))) {
                    if (!ledger.admissible(tag, p, d)) continue;
                    for (int l = 0; l <= c.l_max; ++l)
                        if (!ledger.find(tag, p, d, l)) {
                            ++missing;
                            gaps << "\n  " << field_tag_name(tag) << " p=(" << p.a << "," << p.b << ") d=(" << d.a
                                 << "," << d.b << ") l=" << l;
                        }
                }
            if (missing > 0) throw DataGapError("expand: strict ledger misses window cells:" + gaps.str());
        }
    }
    GradedSeries<R> series = opt.field == "Sinf" ? build_Sinf_series(eng, ledger, w)
                                                 : build_u0_series(eng, ledger, w);
    RunManifest man = make_manifest("expand", c, opt);
    man.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    man.finalize();
    Json out;
    out["manifest"] = man.hash;
    out["fingerprint"] = cfg.fingerprint;
    out["field"] = opt.field;
    // the observed ln(eps) power bound on this window (no a-priori formula)
    out["max_ln_power"] = series.max_l();
    out["cells"] = series_to_json(series);
    write_file(opt.out_path, out.dump(2) + "\n");
    write_manifest(man, opt.out_path);
    std::printf("wrote %zu series cells to %s\n", series.cells().size(), opt.out_path.c_str());
    return 0;
}

int run_check(const ConfigData &c, const CliOptions &opt) {
    auto results = run_acceptance(opt.suite, c);
    if (results.empty()) throw ConfigError("check: unknown suite '" + opt.suite + "'");
    int width = 0;
    for (const auto &r : results) width = std::max(width, static_cast<int>(r.name.size()));
    for (const auto &r : results)
        std::printf("%s %-*s  %s  [%.0f ms]\n", r.pass ? "PASS" : "FAIL", width, r.name.c_str(), r.detail.c_str(),
                    r.ms);
    if (!opt.out_path.empty()) {
        RunManifest man = make_manifest("check", c, opt);
        man.finalize();
        Json rep = check_report_json(results);
        rep["manifest"] = man.hash;
        write_file(opt.out_path, rep.dump(2) + "\n");
        write_manifest(man, opt.out_path);
    }
    return all_passed(results) ? 0 : 4;
}

template <class Fn>
int dispatch_precision(const ConfigData &c, Fn &&fn) {
    if (c.precision == Precision::Extended) return fn.template operator()<long double>();
    return fn.template operator()<double>();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"exact symbolic-numeric engine for corner-and-thin-layer Helmholtz expansions"};
    app.require_subcommand(1);
    CliOptions opt;

    auto add_common = [&](CLI::App *cmd, bool need_out) {
        cmd->add_option("--config", opt.config_path, "problem configuration file");
        if (need_out) cmd->add_option("--out", opt.out_path, "output path")->required();
        cmd->add_option("--window", opt.window_spec, "P_MAX[,D_MIN,D_MAX] in degree tokens (e.g. 3,-2+1/t,4)");
        cmd->add_option("--precision", opt.precision, "double|extended");
        cmd->add_option("--workers", opt.workers, "parallel workers for cell fills");
    };

    CLI::App *mc = app.add_subcommand("match-coeffs", "compute and export a matching-coefficient table");
    add_common(mc, true);
    mc->add_option("--kind", opt.kind, "uS|Su|uu");
    mc->add_option("--format", opt.format, "csv|json");
    mc->add_option("--profiles", opt.profiles_path, "corner-profile CSV for kind=uu");

    CLI::App *lc = app.add_subcommand("layer-correctors", "export layer corrector profiles U_n");
    add_common(lc, true);
    lc->add_option("--n-max", opt.n_max, "largest corrector index");

    CLI::App *ex = app.add_subcommand("expand", "build a total-field series from a sigma ledger");
    add_common(ex, true);
    ex->add_option("--ledger", opt.ledger_path, "ledger file (CSV or JSON)");
    ex->add_flag("--zero-ledger", opt.zero_ledger, "use the all-zero variational ledger");
    ex->add_option("--field", opt.field, "u0|Sinf");

    CLI::App *ck = app.add_subcommand("check", "run the verification suites");
    add_common(ck, false);
    ck->add_option("--out", opt.out_path, "optional JSON report path");
    ck->add_option("--suite", opt.suite,
                   "all|sigma|rim|resolvent|harmonic|geometric|matching|matrix|layer|fd|slope|heps|determinism");

    CLI11_PARSE(app, argc, argv);

    try {
        ConfigData c = load_config(opt);
        if (mc->parsed()) {
            return dispatch_precision(c, [&]<class R>() { return run_match_coeffs<R>(c, opt); });
        }
        if (lc->parsed()) {
            return dispatch_precision(c, [&]<class R>() { return run_layer_correctors<R>(c, opt); });
        }
        if (ex->parsed()) {
            if (!opt.zero_ledger && opt.ledger_path.empty())
                throw ConfigError("expand: provide --ledger PATH or --zero-ledger");
            return dispatch_precision(c, [&]<class R>() { return run_expand<R>(c, opt); });
        }
        if (ck->parsed()) return run_check(c, opt);
    } catch (const DataGapError &e) {
        std::fprintf(stderr, "data gap: %s\n", e.what());
        return 3;
    } catch (const ResourceError &e) {
        std::fprintf(stderr, "resource cap: %s\n", e.what());
        return 5;
    } catch (const ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
