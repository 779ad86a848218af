#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cornerlayer/check.hpp"
#include "cornerlayer/io.hpp"
#include "cornerlayer/matching.hpp"
#include "cornerlayer/oracle.hpp"

namespace py = pybind11;
using namespace cornerlayer;

namespace {

using C = Cx<double>;

Degree to_degree(std::pair<long long, long long> ab) { return Degree{ab.first, ab.second}; }

struct PyEngine {
    ProblemConfig<double> cfg;
    MatchingEngine<double> engine;

    explicit PyEngine(const ConfigData &data) : cfg(ProblemConfig<double>::make(data)), engine(cfg) {}
};

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact calculus for matched corner-and-thin-layer Helmholtz expansions";

    py::class_<ConfigData>(m, "Config")
        .def(py::init([](const std::string &text) { return parse_config_text(text); }), py::arg("text") = "")
        .def_static("from_file", [](const std::string &path) { return parse_config_text(read_file(path)); })
        .def_property_readonly("theta", [](const ConfigData &c) { return c.theta.text(); })
        .def_property_readonly("fingerprint", [](const ConfigData &c) { return config_fingerprint(c); })
        .def_readwrite("mu0", &ConfigData::mu0)
        .def_readwrite("mu1", &ConfigData::mu1)
        .def_readwrite("rho0", &ConfigData::rho0)
        .def_readwrite("rho1", &ConfigData::rho1)
        .def_readwrite("omega_re", &ConfigData::omega_re)
        .def_readwrite("omega_im", &ConfigData::omega_im)
        .def_readwrite("workers", &ConfigData::workers)
        .def("set_theta", [](ConfigData &c, const std::string &spec) { c.theta = parse_theta(spec); })
        .def("validate", &ConfigData::validate);

    py::class_<PiElement<double>>(m, "Element")
        .def("is_zero", &PiElement<double>::zero)
        .def("to_json", [](const PiElement<double> &e) { return pi_element_to_json(e).dump(); })
        .def("__repr__", [](const PiElement<double> &e) {
            return "<Element omega_terms=" + std::to_string(e.omega.size()) +
                   " lambda_terms=" + std::to_string(e.lambda.size()) + ">";
        });

    py::class_<PyEngine>(m, "Engine")
        .def(py::init<const ConfigData &>())
        .def_property_readonly("fingerprint", [](const PyEngine &e) { return e.cfg.fingerprint; })
        .def(
            "phi_d",
            [](PyEngine &e, std::pair<long long, long long> d) { return phi_d<double>(*e.cfg.ctx, to_degree(d)); },
            py::arg("d"), "fundamental singularity phi_d for d = (a, b) meaning a + b*pi/Theta")
        .def(
            "sigma",
            [](PyEngine &e, const PiElement<double> &el, std::pair<long long, long long> d) {
                return sigma_d(*e.cfg.ctx, el, to_degree(d));
            },
            py::arg("element"), py::arg("d"))
        .def(
            "eval",
            [](PyEngine &e, const PiElement<double> &el, const std::string &region, double c1, double c2,
               unsigned j1, unsigned j2) {
                return eval(*e.cfg.ctx, el, region == "omega" ? Region::Omega : Region::Lambda, c1, c2, j1, j2);
            },
            py::arg("element"), py::arg("region"), py::arg("c1"), py::arg("c2"), py::arg("j1") = 0,
            py::arg("j2") = 0)
        .def("laplacian",
             [](PyEngine &e, const PiElement<double> &el) {
                 return PiElement<double>{laplacian_omega(*e.cfg.ctx, el.omega), {}};
             })
        .def("r_delta", [](PyEngine &e, const PiElement<double> &el) { return r_delta(*e.cfg.ctx, el.omega); })
        .def("r_dyy", [](PyEngine &e, const PiElement<double> &el) { return r_dyy(*e.cfg.ctx, el.lambda); })
        .def(
            "add",
            [](PyEngine &e, const PiElement<double> &a, const PiElement<double> &b) {
                return pi_add(*e.cfg.ctx, a, b);
            },
            py::arg("a"), py::arg("b"))
        .def(
            "scale",
            [](PyEngine &e, const PiElement<double> &a, C s) {
                (void)e;
                return pi_scale(a, s);
            },
            py::arg("a"), py::arg("s"))
        .def(
            "match_coeff",
            [](PyEngine &e, const std::string &kind, std::pair<long long, long long> d,
               std::pair<long long, long long> dp, std::pair<long long, long long> p, int l) {
                return e.engine.match_coeff(kind == "uS" ? MatchKind::uS : MatchKind::Su, to_degree(d),
                                            to_degree(dp), to_degree(p), l);
            },
            py::arg("kind"), py::arg("d"), py::arg("dprime"), py::arg("p"), py::arg("l") = 0,
            "matching coefficient c^{u<-S} or c^{S<-u} at (d, d', p, l)")
        .def(
            "matrices_check",
            [](PyEngine &e, long long p_max, long long d_abs_pi_theta, int l_max) {
                QpReport rep = matching_matrices_check(e.engine, Degree::integer(p_max),
                                                       Degree::pi_over_theta(d_abs_pi_theta), l_max);
                py::dict out;
                out["s_cells"] = rep.s_cells;
                out["u_cells"] = rep.u_cells;
                out["max_qp_dev"] = rep.max_qp_dev;
                out["max_diag_dev"] = rep.max_diag_dev;
                out["pass"] = rep.pass;
                return out;
            },
            py::arg("p_max"), py::arg("d_abs_pi_theta") = 2, py::arg("l_max") = 1)
        .def(
            "corner_coeff",
            [](PyEngine &e, std::pair<long long, long long> d, std::pair<long long, long long> dp,
               std::pair<long long, long long> p, int l) {
                CornerProfiles<double> zero(e.cfg.ctx, true);
                return corner_coeff(e.engine, to_degree(d), to_degree(dp), to_degree(p), l, zero);
            },
            py::arg("d"), py::arg("dprime"), py::arg("p"), py::arg("l") = 0,
            "composite corner coefficient c^{u<-u} in zero-profile mode")
        .def(
            "expand_impulse",
            [](PyEngine &e, std::pair<long long, long long> d, long long p_max_int, long long d_extra) {
                SigmaLedger<double> ledger(e.cfg.ctx);
                ledger.set(FieldTag::Far, Degree{0, 0}, to_degree(d), 0, C(1), Provenance::Ingested);
                Window w{Degree::integer(p_max_int), Degree{0, 0} - Degree::integer(2),
                         to_degree(d) + Degree::integer(d_extra)};
                auto s = build_u0_series(e.engine, ledger, w);
                return series_to_json(s).dump();
            },
            py::arg("d"), py::arg("p_max") = 1, py::arg("d_extra") = 4,
            "far-field series seeded by a unit sigma impulse, as JSON")
        .def("u0_residual",
             [](PyEngine &e, std::pair<long long, long long> d, long long p_max_int, long long d_extra) {
                 SigmaLedger<double> ledger(e.cfg.ctx);
                 ledger.set(FieldTag::Far, Degree{0, 0}, to_degree(d), 0, C(1), Provenance::Ingested);
                 Window w{Degree::integer(p_max_int), Degree{0, 0} - Degree::integer(2),
                          to_degree(d) + Degree::integer(d_extra)};
                 auto s = build_u0_series(e.engine, ledger, w);
                 return u0_residual_max(e.engine, s);
             });

    m.def(
        "layer_correctors",
        [](double mu0, double mu1, int n_max) {
            auto profiles = layer_corrector_profiles(n_max);
            py::list out;
            for (const auto &v : profiles) {
                py::list coeffs;
                for (const auto &c : v) coeffs.append(mu0 / mu1 * rat_to_double(c));
                out.append(coeffs);
            }
            return out;
        },
        py::arg("mu0") = 1.0, py::arg("mu1") = 1.0, py::arg("n_max") = 8,
        "U_n polynomial coefficients in Y, ascending powers");

    m.def(
        "tangent_coefficients",
        [](int n_max) {
            py::list out;
            for (const auto &t : tangent_coefficients(n_max)) out.append(rat_to_string(t));
            return out;
        },
        py::arg("n_max") = 8, "exact rational Taylor coefficients of the tangent, as strings");

    m.def(
        "rim_solve",
        [](const ConfigData &data, std::pair<long long, long long> d, const std::vector<C> &q) {
            auto cfg = ProblemConfig<double>::make(data);
            PolyT<double> p = rim_solve(*cfg.ctx, to_degree(d), PolyT<double>(std::vector<C>(q)));
            return p.coeffs();
        },
        py::arg("config"), py::arg("d"), py::arg("q"),
        "solve Im[alpha^d P(T - i Theta)] = Q, coefficients ascending");

    m.def(
        "run_checks",
        [](const std::string &suite) {
            ConfigData base;
            auto results = run_acceptance(suite, base);
            py::list out;
            for (const auto &r : results) {
                py::dict d;
                d["name"] = r.name;
                d["pass"] = r.pass;
                d["detail"] = r.detail;
                d["ms"] = r.ms;
                out.append(d);
            }
            return out;
        },
        py::arg("suite") = "all");

    m.attr("__version__") = "0.1.0";
}
