#ifndef CORNERLAYER_CONFIG_HPP
#define CORNERLAYER_CONFIG_HPP

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "cornerlayer/angle.hpp"
#include "cornerlayer/poly.hpp"
#include "cornerlayer/series.hpp"

namespace cornerlayer {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataGapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// How Theta was declared. The lattice arithmetic is exact only when the
// rational form is used, so the declaration is part of the problem identity.
struct ThetaSpec {
    bool rational = true;
    long long num = 1, den = 2; // Theta = pi*num/den
    double radians = 0.0;

    std::string text() const {
        if (rational) {
            std::ostringstream os;
            os << "pi*" << num << "/" << den;
            return os.str();
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", radians);
        return buf;
    }
};

enum class Precision { Double, Extended };

inline const char *precision_name(Precision p) { return p == Precision::Double ? "double" : "extended"; }

// Every tolerance used by the verification paths, in one record.
struct Tolerances {
    double rim_roundtrip = 1e-12;  // backward-relative, RIm reconstruction
    double ring = 1e-13;           // polynomial ring axioms
    double resolvent_sym = 1e-11;  // symbolic coefficient identities
    double resolvent_grid = 1e-9;  // grid evaluation of resolvent identities
    double boundary = 1e-12;       // boundary vanishing, relative to term scale
    double continuity = 1e-10;     // interface continuity
    double fd = 1e-6;              // analytic vs central finite differences
    double geom_oracle = 1e-10;    // worklist DP vs word enumeration
    double match_unit = 1e-12;     // unit matching-coefficient cells
    double qp_identity = 1e-9;     // max norm of QP - I
    double heps = 1e-12;           // H o H^{-1} = id, cell-wise
    double series_eq = 1e-11;      // cell-wise series equality
    double slope = 0.1;            // residual slope vs predicted order

    void validate() const {
        for (double v : {rim_roundtrip, ring, resolvent_sym, resolvent_grid, boundary, continuity, fd,
                         geom_oracle, match_unit, qp_identity, heps, series_eq, slope})
            if (!(v > 0.0)) throw ConfigError("tolerances must be positive");
    }
};

// precision-independent configuration snapshot
struct ConfigData {
    ThetaSpec theta;
    double mu0 = 1.0, mu1 = 1.0, rho0 = 1.0, rho1 = 1.0;
    double omega_re = 1.0, omega_im = 1.0;
    Precision precision = Precision::Double;
    Window window = Window{Degree::integer(3), Degree::integer(-4), Degree::integer(4)};
    int l_max = 4;
    int workers = 1;
    Tolerances tol;

    void validate() const {
        if (!(mu0 > 0) || !(mu1 > 0) || !(rho0 > 0) || !(rho1 > 0))
            throw ConfigError("mu0, mu1, rho0, rho1 must be positive");
        if (omega_im == 0.0) throw ConfigError("omega must have a nonzero imaginary part");
        if (workers < 1) throw ConfigError("workers must be >= 1");
        tol.validate();
        if (theta.rational) {
            if (theta.num <= 0 || theta.den <= 0 || !(double(theta.num) / double(theta.den) < 2.0))
                throw ConfigError("theta: pi*num/den must lie in (0, 2*pi)");
        } else if (!(theta.radians > 0.0) || !(theta.radians < 2.0 * AngleContext::pi())) {
            throw ConfigError("theta must lie in (0, 2*pi)");
        }
    }
};

// ---- parsing ----------------------------------------------------------------

namespace confdetail {

inline std::string trim(const std::string &s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    std::size_t e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string &field, const std::string &v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw ConfigError("config field '" + field + "': trailing characters in '" + v + "'");
        return x;
    } catch (const ConfigError &) {
        throw;
    } catch (...) {
        throw ConfigError("config field '" + field + "': cannot parse number '" + v + "'");
    }
}

inline long long parse_int(const std::string &field, const std::string &v) {
    try {
        std::size_t pos = 0;
        long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw ConfigError("config field '" + field + "': trailing characters in '" + v + "'");
        return x;
    } catch (const ConfigError &) {
        throw;
    } catch (...) {
        throw ConfigError("config field '" + field + "': cannot parse integer '" + v + "'");
    }
}

} // namespace confdetail

// Theta declaration: "pi", "pi/3", "pi*2/3", "pi*2", or a radian number.
inline ThetaSpec parse_theta(const std::string &raw) {
    std::string v = confdetail::trim(raw);
    ThetaSpec t;
    if (v.rfind("pi", 0) == 0) {
        t.rational = true;
        t.num = 1;
        t.den = 1;
        std::string rest = confdetail::trim(v.substr(2));
        if (!rest.empty()) {
            if (rest[0] == '*') {
                std::string body = confdetail::trim(rest.substr(1));
                auto slash = body.find('/');
                if (slash == std::string::npos) {
                    t.num = confdetail::parse_int("theta", body);
                } else {
                    t.num = confdetail::parse_int("theta", confdetail::trim(body.substr(0, slash)));
                    t.den = confdetail::parse_int("theta", confdetail::trim(body.substr(slash + 1)));
                }
            } else if (rest[0] == '/') {
                t.den = confdetail::parse_int("theta", confdetail::trim(rest.substr(1)));
            } else {
                throw ConfigError("config field 'theta': cannot parse '" + v + "'");
            }
        }
        return t;
    }
    t.rational = false;
    t.radians = confdetail::parse_number("theta", v);
    return t;
}

// Degree token: "a", "b/t", "a+b/t", "a-b/t" where /t means *(pi/Theta)
inline Degree parse_degree_token(const std::string &field, const std::string &raw) {
    std::string v = confdetail::trim(raw);
    if (v.empty()) throw ConfigError("config field '" + field + "': empty degree");
    auto t_pos = v.find("/t");
    if (t_pos == std::string::npos) return Degree::integer(confdetail::parse_int(field, v));
    // split the pi/Theta part from an optional integer head: a+b/t or b/t
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < t_pos; ++i)
        if (v[i] == '+' || v[i] == '-') split = i;
    long long a = 0, b = 0;
    if (split == std::string::npos) {
        b = confdetail::parse_int(field, v.substr(0, t_pos));
    } else {
        a = confdetail::parse_int(field, v.substr(0, split));
        std::string bs = v.substr(split, t_pos - split);
        if (bs == "+") bs = "1";
        else if (bs == "-") bs = "-1";
        b = confdetail::parse_int(field, bs);
    }
    if (v.substr(t_pos) != "/t")
        throw ConfigError("config field '" + field + "': trailing characters in '" + v + "'");
    return Degree{a, b};
}

// "P_MAX[,D_MIN,D_MAX]" in degree tokens
inline Window parse_window(const std::string &raw, const Window &defaults) {
    Window w = defaults;
    std::string v = confdetail::trim(raw);
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto comma = v.find(',', start);
        parts.push_back(v.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 1 && parts.size() != 3)
        throw ConfigError("window: expected P_MAX or P_MAX,D_MIN,D_MAX");
    w.p_max = parse_degree_token("window", parts[0]);
    if (parts.size() == 3) {
        w.d_min = parse_degree_token("window", parts[1]);
        w.d_max = parse_degree_token("window", parts[2]);
    }
    return w;
}

// key = value lines, '#' comments
inline ConfigData parse_config_text(const std::string &text) {
    ConfigData c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = confdetail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = confdetail::trim(line.substr(0, eq));
        std::string val = confdetail::trim(line.substr(eq + 1));
        if (key == "theta") c.theta = parse_theta(val);
        else if (key == "mu0") c.mu0 = confdetail::parse_number(key, val);
        else if (key == "mu1") c.mu1 = confdetail::parse_number(key, val);
        else if (key == "rho0") c.rho0 = confdetail::parse_number(key, val);
        else if (key == "rho1") c.rho1 = confdetail::parse_number(key, val);
        else if (key == "omega_re") c.omega_re = confdetail::parse_number(key, val);
        else if (key == "omega_im") c.omega_im = confdetail::parse_number(key, val);
        else if (key == "precision") {
            if (val == "double") c.precision = Precision::Double;
            else if (val == "extended") c.precision = Precision::Extended;
            else throw ConfigError("config field 'precision': expected double or extended");
        } else if (key == "workers") c.workers = static_cast<int>(confdetail::parse_int(key, val));
        else if (key == "window.p_max") c.window.p_max = parse_degree_token(key, val);
        else if (key == "window.d_min") c.window.d_min = parse_degree_token(key, val);
        else if (key == "window.d_max") c.window.d_max = parse_degree_token(key, val);
        else if (key == "window.l_max") c.l_max = static_cast<int>(confdetail::parse_int(key, val));
        else if (key.rfind("tol.", 0) == 0) {
            std::string name = key.substr(4);
            double v = confdetail::parse_number(key, val);
            if (name == "rim_roundtrip") c.tol.rim_roundtrip = v;
            else if (name == "ring") c.tol.ring = v;
            else if (name == "resolvent_sym") c.tol.resolvent_sym = v;
            else if (name == "resolvent_grid") c.tol.resolvent_grid = v;
            else if (name == "boundary") c.tol.boundary = v;
            else if (name == "continuity") c.tol.continuity = v;
            else if (name == "fd") c.tol.fd = v;
            else if (name == "geom_oracle") c.tol.geom_oracle = v;
            else if (name == "match_unit") c.tol.match_unit = v;
            else if (name == "qp_identity") c.tol.qp_identity = v;
            else if (name == "heps") c.tol.heps = v;
            else if (name == "series_eq") c.tol.series_eq = v;
            else if (name == "slope") c.tol.slope = v;
            else throw ConfigError("unknown tolerance '" + key + "'");
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    c.validate();
    return c;
}

// ---- fingerprint --------------------------------------------------------------

inline std::uint64_t fnv1a64(const std::string &s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// identity of the coefficient tables: (Theta, omega, mu, rho) and the
// precision mode - nothing else
inline std::string config_fingerprint(const ConfigData &c) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "theta=%s;mu0=%.17g;mu1=%.17g;rho0=%.17g;rho1=%.17g;om=%.17g,%.17g;prec=%s",
                  c.theta.text().c_str(), c.mu0, c.mu1, c.rho0, c.rho1, c.omega_re, c.omega_im,
                  precision_name(c.precision));
    return hex64(fnv1a64(buf));
}

// ---- typed problem configuration ----------------------------------------------

template <class R>
struct ProblemConfig {
    std::shared_ptr<const AngleContext> ctx;
    ConfigData data;
    R mu0, mu1, rho0, rho1;
    Cx<R> omega, k0, k1, k0sq, k1sq;
    R mu_ratio; // mu0 / mu1
    std::string fingerprint;

    static ProblemConfig make(const ConfigData &c) {
        c.validate();
        ProblemConfig p;
        p.data = c;
        p.ctx = std::make_shared<AngleContext>(
            c.theta.rational ? AngleContext::rational_pi(c.theta.num, c.theta.den)
                             : AngleContext::radians(c.theta.radians));
        p.mu0 = static_cast<R>(c.mu0);
        p.mu1 = static_cast<R>(c.mu1);
        p.rho0 = static_cast<R>(c.rho0);
        p.rho1 = static_cast<R>(c.rho1);
        p.omega = Cx<R>(static_cast<R>(c.omega_re), static_cast<R>(c.omega_im));
        p.k0 = p.omega * std::sqrt(p.rho0 / p.mu0);
        p.k1 = p.omega * std::sqrt(p.rho1 / p.mu1);
        p.k0sq = p.k0 * p.k0;
        p.k1sq = p.k1 * p.k1;
        p.mu_ratio = p.mu0 / p.mu1;
        p.fingerprint = config_fingerprint(c);
        return p;
    }
};

} // namespace cornerlayer

#endif
