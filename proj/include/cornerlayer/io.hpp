#ifndef CORNERLAYER_IO_HPP
#define CORNERLAYER_IO_HPP

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cornerlayer/config.hpp"
#include "cornerlayer/matching.hpp"
#include "cornerlayer/series.hpp"

namespace cornerlayer {

using Json = nlohmann::json;

// ---- small helpers -------------------------------------------------------------

inline std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
inline std::string fmt_real(long double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.21Lg", v);
    return buf;
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

inline ConfigData load_config_file(const std::string &path) { return parse_config_text(read_file(path)); }

// ---- PiElement schema ------------------------------------------------------------
// {omega:[{q,k,P:[[re,im],...]}], lambda:[{d,Q:[[powT,powY,re,im],...]}]}
// lattice exponents serialize as [a, b]; off-lattice reals as numbers

inline Json exponent_to_json(const Exponent &e) {
    if (e.on_lattice) return Json::array({e.d.a, e.d.b});
    return Json(e.x);
}

inline Exponent exponent_from_json(const Json &j) {
    if (j.is_array()) return Exponent::lattice(Degree{j.at(0).get<long long>(), j.at(1).get<long long>()});
    return Exponent::real(j.get<double>());
}

template <class R>
Json polyt_to_json(const PolyT<R> &p) {
    Json arr = Json::array();
    for (const auto &c : p.coeffs()) arr.push_back(Json::array({static_cast<double>(c.real()), static_cast<double>(c.imag())}));
    return arr;
}

template <class R>
PolyT<R> polyt_from_json(const Json &j) {
    std::vector<Cx<R>> c;
    for (const auto &e : j) c.emplace_back(static_cast<R>(e.at(0).get<double>()), static_cast<R>(e.at(1).get<double>()));
    return PolyT<R>(std::move(c));
}

template <class R>
Json pi_element_to_json(const PiElement<R> &e) {
    Json out;
    out["omega"] = Json::array();
    for (const auto &t : e.omega) {
        Json jt;
        jt["q"] = exponent_to_json(t.q);
        jt["k"] = t.k;
        jt["P"] = polyt_to_json(t.P);
        if (t.branch == SectorBranch::PlainZ) jt["branch"] = "plain_z";
        out["omega"].push_back(jt);
    }
    out["lambda"] = Json::array();
    for (const auto &t : e.lambda) {
        Json jt;
        jt["d"] = exponent_to_json(t.d);
        Json q = Json::array();
        for (const auto &[key, v] : t.Q.terms())
            q.push_back(Json::array({key.first, key.second, static_cast<double>(v.real()), static_cast<double>(v.imag())}));
        jt["Q"] = q;
        out["lambda"].push_back(jt);
    }
    return out;
}

template <class R>
PiElement<R> pi_element_from_json(const AngleContext &ctx, const Json &j) {
    PiElement<R> e;
    for (const auto &jt : j.value("omega", Json::array())) {
        OmegaTerm<R> t;
        t.q = exponent_from_json(jt.at("q"));
        t.k = jt.at("k").get<long long>();
        t.P = polyt_from_json<R>(jt.at("P"));
        if (jt.value("branch", std::string()) == "plain_z") t.branch = SectorBranch::PlainZ;
        e.omega.push_back(std::move(t));
    }
    for (const auto &jt : j.value("lambda", Json::array())) {
        LambdaTerm<R> t;
        t.d = exponent_from_json(jt.at("d"));
        for (const auto &m : jt.at("Q"))
            t.Q.add(m.at(0).get<int>(), m.at(1).get<int>(),
                    Cx<R>(static_cast<R>(m.at(2).get<double>()), static_cast<R>(m.at(3).get<double>())));
        e.lambda.push_back(std::move(t));
    }
    return normalize(ctx, std::move(e));
}

// ---- GradedSeries schema -----------------------------------------------------------
// array of {p:[a,b], d:[a,b], l, element:<PiElement>}

template <class R>
Json series_to_json(const GradedSeries<R> &s) {
    Json arr = Json::array();
    for (const auto &[key, cell] : s.cells()) {
        for (int l = 0; l <= cell.max_l(); ++l) {
            const PiElement<R> &e = cell.by_l[static_cast<std::size_t>(l)];
            if (e.zero()) continue;
            Json jc;
            jc["p"] = Json::array({key.first.a, key.first.b});
            jc["d"] = Json::array({key.second.a, key.second.b});
            jc["l"] = l;
            jc["element"] = pi_element_to_json(e);
            arr.push_back(jc);
        }
    }
    return arr;
}

// ---- sigma ledger: CSV `field,p_a,p_b,d_a,d_b,l,re,im` and JSON ---------------------

template <class R>
std::string ledger_to_csv(const SigmaLedger<R> &ledger) {
    std::ostringstream os;
    os << "field,p_a,p_b,d_a,d_b,l,re,im\n";
    for (const auto &[key, cell] : ledger.cells()) {
        os << field_tag_name(key.f) << ',' << key.p.a << ',' << key.p.b << ',' << key.d.a << ',' << key.d.b << ','
           << key.l << ',' << fmt_real(static_cast<double>(cell.value.real())) << ','
           << fmt_real(static_cast<double>(cell.value.imag())) << '\n';
    }
    return os.str();
}

namespace iodetail {

inline std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        out.push_back(confdetail::trim(line.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace iodetail

// Ledger files carry the variational data. `default = zero` (the default)
// treats unlisted cells as zeros; `default = error` raises a data gap when the
// recursion needs an unlisted cell.
template <class R>
struct LedgerFile {
    SigmaLedger<R> cells;
    bool strict = false; // default=error

    explicit LedgerFile(std::shared_ptr<const AngleContext> ctx) : cells(std::move(ctx)) {}

    IngestCallback<R> callback() const {
        const SigmaLedger<R> *table = &cells;
        bool strict_mode = strict;
        return [table, strict_mode](FieldTag f, Degree p, Degree d, int l) -> std::optional<Cx<R>> {
            if (const auto *c = table->find(f, p, d, l)) return c->value;
            if (strict_mode) return std::nullopt;
            return Cx<R>(0);
        };
    }
};

template <class R>
LedgerFile<R> ledger_from_csv(std::shared_ptr<const AngleContext> ctx, const std::string &text) {
    LedgerFile<R> out(ctx);
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            // an optional `# default=error` marker makes unlisted cells a gap
            if (line.find("default=error") != std::string::npos) out.strict = true;
            line = line.substr(0, hash);
        }
        line = confdetail::trim(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "field,p_a,p_b,d_a,d_b,l,re,im")
                throw ConfigError("ledger CSV: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        auto f = iodetail::split_csv_line(line);
        if (f.size() != 8) throw ConfigError("ledger CSV line " + std::to_string(lineno) + ": expected 8 fields");
        FieldTag tag;
        if (f[0] == "far") tag = FieldTag::Far;
        else if (f[0] == "corner") tag = FieldTag::Corner;
        else throw ConfigError("ledger CSV line " + std::to_string(lineno) + ": field must be far or corner");
        Degree p{confdetail::parse_int("ledger", f[1]), confdetail::parse_int("ledger", f[2])};
        Degree d{confdetail::parse_int("ledger", f[3]), confdetail::parse_int("ledger", f[4])};
        int l = static_cast<int>(confdetail::parse_int("ledger", f[5]));
        Cx<R> v(static_cast<R>(confdetail::parse_number("ledger", f[6])),
                static_cast<R>(confdetail::parse_number("ledger", f[7])));
        out.cells.set(tag, p, d, l, v, Provenance::Ingested);
    }
    return out;
}

template <class R>
LedgerFile<R> ledger_from_json(std::shared_ptr<const AngleContext> ctx, const std::string &text) {
    Json j = Json::parse(text);
    LedgerFile<R> out(ctx);
    out.strict = j.value("default", std::string("zero")) == std::string("error");
    for (const auto &c : j.value("cells", Json::array())) {
        FieldTag tag = c.at("field").get<std::string>() == "far" ? FieldTag::Far : FieldTag::Corner;
        Degree p{c.at("p").at(0).get<long long>(), c.at("p").at(1).get<long long>()};
        Degree d{c.at("d").at(0).get<long long>(), c.at("d").at(1).get<long long>()};
        out.cells.set(tag, p, d, c.at("l").get<int>(),
                      Cx<R>(static_cast<R>(c.at("re").get<double>()), static_cast<R>(c.at("im").get<double>())),
                      Provenance::Ingested);
    }
    return out;
}

template <class R>
LedgerFile<R> load_ledger_file(std::shared_ptr<const AngleContext> ctx, const std::string &path) {
    std::string text = read_file(path);
    if (!text.empty() && (text[0] == '{' || text[0] == '[')) return ledger_from_json<R>(ctx, text);
    return ledger_from_csv<R>(ctx, text);
}

// corner-profile coefficients sigma_{d1}(Sinf_{d2,n}): CSV `d1_a,d1_b,d2_a,d2_b,n,re,im`
template <class R>
CornerProfiles<R> profiles_from_csv(std::shared_ptr<const AngleContext> ctx, const std::string &text) {
    CornerProfiles<R> out(ctx, false);
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = confdetail::trim(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "d1_a,d1_b,d2_a,d2_b,n,re,im")
                throw ConfigError("profile CSV: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        auto f = iodetail::split_csv_line(line);
        if (f.size() != 7) throw ConfigError("profile CSV: expected 7 fields");
        Degree d1{confdetail::parse_int("profile", f[0]), confdetail::parse_int("profile", f[1])};
        Degree d2{confdetail::parse_int("profile", f[2]), confdetail::parse_int("profile", f[3])};
        out.set(d1, d2, static_cast<int>(confdetail::parse_int("profile", f[4])),
                Cx<R>(static_cast<R>(confdetail::parse_number("profile", f[5])),
                      static_cast<R>(confdetail::parse_number("profile", f[6]))));
    }
    return out;
}

// ---- coefficient table export -------------------------------------------------------
// a fingerprint line precedes the data; columns d_a,d_b,dp_a,dp_b,p_a,p_b,l,re,im

template <class R>
std::string table_to_csv(const MatchTable<R> &t, const std::string &manifest_hash = "") {
    std::ostringstream os;
    os << "# fingerprint=" << t.fingerprint << " kind=" << match_kind_name(t.kind);
    if (!manifest_hash.empty()) os << " manifest=" << manifest_hash;
    os << '\n';
    os << "d_a,d_b,dp_a,dp_b,p_a,p_b,l,re,im\n";
    for (const auto &[key, v] : t.cells) {
        os << key.d.a << ',' << key.d.b << ',' << key.dp.a << ',' << key.dp.b << ',' << key.p.a << ',' << key.p.b
           << ',' << key.l << ',' << fmt_real(v.real()) << ',' << fmt_real(v.imag()) << '\n';
    }
    return os.str();
}

// reload of a persisted table; the fingerprint line must match the config
template <class R>
MatchTable<R> table_from_csv(const ProblemConfig<R> &cfg, const std::string &text) {
    MatchTable<R> t(cfg.ctx.get());
    t.fingerprint = cfg.fingerprint;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            auto fp = line.find("fingerprint=");
            if (fp != std::string::npos) {
                std::string stored = line.substr(fp + 12, 16);
                if (stored != cfg.fingerprint)
                    throw ConfigError("table fingerprint " + stored + " does not match the configuration (" +
                                      cfg.fingerprint + ")");
            }
            auto kd = line.find("kind=");
            if (kd != std::string::npos)
                t.kind = line.substr(kd + 5, 2) == "uS" ? MatchKind::uS : MatchKind::Su;
            continue;
        }
        line = confdetail::trim(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "d_a,d_b,dp_a,dp_b,p_a,p_b,l,re,im")
                throw ConfigError("table CSV: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        auto f = iodetail::split_csv_line(line);
        if (f.size() != 9) throw ConfigError("table CSV: expected 9 fields");
        typename MatchTable<R>::Key key{
            Degree{confdetail::parse_int("table", f[0]), confdetail::parse_int("table", f[1])},
            Degree{confdetail::parse_int("table", f[2]), confdetail::parse_int("table", f[3])},
            Degree{confdetail::parse_int("table", f[4]), confdetail::parse_int("table", f[5])},
            static_cast<int>(confdetail::parse_int("table", f[6]))};
        t.cells[key] = Cx<R>(static_cast<R>(confdetail::parse_number("table", f[7])),
                             static_cast<R>(confdetail::parse_number("table", f[8])));
    }
    return t;
}

template <class R>
Json table_to_json(const MatchTable<R> &t, const std::string &manifest_hash = "") {
    Json out;
    out["fingerprint"] = t.fingerprint;
    out["kind"] = match_kind_name(t.kind);
    if (!manifest_hash.empty()) out["manifest"] = manifest_hash;
    Json cells = Json::array();
    for (const auto &[key, v] : t.cells) {
        cells.push_back(Json{{"d", {key.d.a, key.d.b}},
                             {"dp", {key.dp.a, key.dp.b}},
                             {"p", {key.p.a, key.p.b}},
                             {"l", key.l},
                             {"re", static_cast<double>(v.real())},
                             {"im", static_cast<double>(v.imag())}});
    }
    out["cells"] = cells;
    return out;
}

// ---- oracle reports ----------------------------------------------------------------

inline Json residual_report_to_json(const std::vector<double> &radii, const std::vector<double> &norms,
                                    double slope, double expected, bool pass) {
    return Json{{"radii", radii}, {"norms", norms},     {"slope", slope},
                {"expected_slope", expected}, {"pass", pass}};
}

// ---- run manifest ---------------------------------------------------------------------

struct RunManifest {
    std::string command;
    ConfigData config;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    double elapsed_ms = 0.0;
    std::string version = "0.1.0";
    std::string hash; // filled by finalize()

    Json to_json() const {
        Json j;
        j["command"] = command;
        j["version"] = version;
        j["config"] = {{"theta", config.theta.text()},
                       {"mu0", config.mu0},
                       {"mu1", config.mu1},
                       {"rho0", config.rho0},
                       {"rho1", config.rho1},
                       {"omega_re", config.omega_re},
                       {"omega_im", config.omega_im},
                       {"precision", precision_name(config.precision)},
                       {"workers", config.workers},
                       {"fingerprint", config_fingerprint(config)}};
        j["tolerances"] = {{"rim_roundtrip", config.tol.rim_roundtrip},
                           {"ring", config.tol.ring},
                           {"resolvent_sym", config.tol.resolvent_sym},
                           {"resolvent_grid", config.tol.resolvent_grid},
                           {"boundary", config.tol.boundary},
                           {"continuity", config.tol.continuity},
                           {"fd", config.tol.fd},
                           {"geom_oracle", config.tol.geom_oracle},
                           {"match_unit", config.tol.match_unit},
                           {"qp_identity", config.tol.qp_identity},
                           {"heps", config.tol.heps},
                           {"series_eq", config.tol.series_eq},
                           {"slope", config.tol.slope}};
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        j["elapsed_ms"] = elapsed_ms;
        if (!hash.empty()) j["hash"] = hash;
        return j;
    }

    // hash of the manifest content (without the hash field itself)
    void finalize() {
        hash.clear();
        hash = hex64(fnv1a64(to_json().dump()));
    }
};

inline void write_manifest(const RunManifest &m, const std::string &out_path) {
    write_file(out_path + ".manifest.json", m.to_json().dump(2) + "\n");
}

} // namespace cornerlayer

#endif
