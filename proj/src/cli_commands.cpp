#include "stf/cli_commands.hpp"

#include "stf/errors.hpp"
#include "stf/harmonics.hpp"
#include "stf/maxwell.hpp"
#include "stf/oracle.hpp"
#include "stf/tensor_io.hpp"
#include "stf/verify.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>

using nlohmann::json;

namespace stf {
namespace cli {

void Config::validate() const {
    if (!(tolerance > 0.0)) throw ArgumentError("tolerance must be positive");
    if (lmax < 0) throw ArgumentError("lmax must be non-negative");
    if (format != "text" && format != "json")
        throw ArgumentError("format must be 'text' or 'json'");
    if (quad_degree && *quad_degree < 0) throw ArgumentError("quadrature degree must be >= 0");
}

namespace {

void emit(const Config& cfg, const json& report, const std::string& text) {
    if (cfg.format == "json")
        std::cout << report.dump(2) << "\n";
    else
        std::cout << text;
}

json detect_input(const json& j, std::string& kind) {
    if (j.contains("terms")) kind = "polynomial";
    else if (j.contains("basis")) kind = "harmonics";
    else if (j.contains("coeffs")) kind = "expansion";
    else if (j.contains("rank")) kind = "tensor";
    else throw ParseError("unrecognized input schema");
    return j;
}

UnitVec direction_from_args(std::optional<double> theta, std::optional<double> phi,
                            std::optional<std::array<double, 3>> dir) {
    if (dir) {
        const auto& d = *dir;
        const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        if (n == 0.0) throw ArgumentError("direction must be nonzero");
        return UnitVec(d[0] / n, d[1] / n, d[2] / n);
    }
    if (theta && phi) return UnitVec::from_angles(*theta, *phi);
    throw ArgumentError("provide either --dir or both --theta and --phi");
}

} // namespace

int cmd_detrace(const Config& cfg, const std::string& in_path, const std::string& out_path) {
    auto t = io::tensor_from_json(io::load_json_file(in_path));
    SymTensor<Exact> result = detrace_general(t);
    io::save_json_file(out_path, io::tensor_to_json(result));

    Exact max_trace;
    bool exact_zero = true;
    if (result.rank() >= 2) {
        auto tr = trace(result);
        for (std::size_t i = 0; i < tr.size(); ++i)
            if (!tr[i].is_zero()) exact_zero = false;
    }
    json rep{{"command", "detrace"},
             {"rank", t.rank()},
             {"dim", t.dim()},
             {"max_trace_residual", exact_zero ? 0.0 : 1.0},
             {"exact", exact_zero},
             {"output", out_path}};
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "detraced rank-%d tensor (dim %d) -> %s\nmax trace residual: %s\n", t.rank(),
                  t.dim(), out_path.c_str(), exact_zero ? "0 (exact)" : "NONZERO");
    emit(cfg, rep, buf);
    return exact_zero ? 0 : 1;
}

int cmd_expand(const Config& cfg, const std::string& in_path, const std::string& out_path,
               std::optional<int> lmax_override) {
    auto poly = io::polynomial_from_json(io::load_json_file(in_path));
    auto e = expand(poly);
    const int needed = e.max_order();
    bool truncated = false;
    if (lmax_override && *lmax_override < needed) {
        e.truncate(*lmax_override);
        truncated = true;
        std::cerr << "warning: expansion truncated at l=" << *lmax_override
                  << " but the polynomial needs l=" << needed << "\n";
    }
    io::save_json_file(out_path, io::expansion_to_json(e));

    // Parseval check: analytic product integral against the coefficient sum
    // (the two only agree when nothing was truncated away)
    const Exact direct = integrate_product(poly, poly);
    Exact parseval;
    for (const auto& [l, c] : e.coefficients())
        parseval += Exact(Rational(4, 2 * l + 1), 1) * legendre_leading_coefficient(l) *
                    contract_full(c.sym(), c.sym());
    const bool equal = (direct == parseval);

    // pointwise reconstruction residual at a fixed sample of directions
    double recon_resid = 0.0;
    if (!truncated) {
        std::mt19937 rng(20240917);
        std::normal_distribution<double> g;
        for (int i = 0; i < 20; ++i) {
            double x = g(rng), y = g(rng), z = g(rng);
            const double n = std::sqrt(x * x + y * y + z * z);
            if (n < 1e-6) continue;
            const UnitVec dir(x / n, y / n, z / n);
            recon_resid = std::max(recon_resid, std::abs(e.reconstruct(dir) - poly.eval(dir)));
        }
    }

    json rep{{"command", "expand"},
             {"reconstruction_residual", recon_resid},
             {"orders", e.coefficients().size()},
             {"max_order", e.max_order()},
             {"truncated", truncated},
             {"parseval_direct", io::exact_to_json(direct)},
             {"parseval_sum", io::exact_to_json(parseval)},
             {"parseval_exact_match", equal},
             {"output", out_path}};
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "expansion with %zu orders (max l=%d) -> %s\n"
                  "parseval: direct %s vs coefficient sum %s (%s)\n"
                  "reconstruction residual: %.3e\n",
                  e.coefficients().size(), e.max_order(), out_path.c_str(),
                  direct.str().c_str(), parseval.str().c_str(),
                  equal ? "exact match" : (truncated ? "truncated" : "MISMATCH"), recon_resid);
    emit(cfg, rep, buf);
    if (truncated) return 0;
    return equal ? 0 : 1;
}

int cmd_convert(const Config& cfg, const std::string& in_path, const std::string& to,
                std::optional<std::string> basis, const std::string& out_path) {
    if (to != "stf" && to != "sph") throw ArgumentError("--to must be 'stf' or 'sph'");
    SphBasis want = SphBasis::complex_standard;
    if (basis) {
        if (*basis == "complex") want = SphBasis::complex_standard;
        else if (*basis == "real") want = SphBasis::real;
        else throw ArgumentError("--basis must be 'complex' or 'real'");
    }

    std::string kind;
    auto j = detect_input(io::load_json_file(in_path), kind);
    json out;
    std::string text;
    if (to == "sph") {
        if (kind != "expansion")
            throw ArgumentError("--to sph expects a multipole expansion input");
        auto e = io::expansion_from_json(j);
        auto c = stf_to_sph(e, want);
        out = io::sph_coeffs_to_json(c);
        text = "converted expansion -> harmonic coefficients (" +
               std::string(want == SphBasis::real ? "real" : "complex") + " basis)\n";
    } else {
        if (kind != "harmonics")
            throw ArgumentError("--to stf expects harmonic coefficients input");
        auto c = io::sph_coeffs_from_json(j);
        if (basis && want != c.basis)
            throw ArgumentError("--basis disagrees with the input file's basis tag");
        auto e = sph_to_stf(c);
        out = io::expansion_to_json(e, /*as_float=*/true);
        text = "converted harmonic coefficients -> expansion\n";
    }
    io::save_json_file(out_path, out);
    json rep{{"command", "convert"}, {"to", to}, {"output", out_path}};
    emit(cfg, rep, text);
    return 0;
}

int cmd_eval(const Config& cfg, const std::string& in_path, std::optional<double> theta,
             std::optional<double> phi, std::optional<std::array<double, 3>> dir) {
    const UnitVec n = direction_from_args(theta, phi, dir);
    std::string kind;
    auto j = detect_input(io::load_json_file(in_path), kind);

    std::complex<double> value;
    if (kind == "polynomial") {
        value = io::polynomial_from_json(j).eval(n);
    } else if (kind == "expansion") {
        value = io::expansion_from_json(j).reconstruct(n);
    } else if (kind == "harmonics") {
        auto c = io::sph_coeffs_from_json(j);
        std::complex<double> acc = 0.0;
        for (const auto& [lm, v] : c.coeffs) {
            const auto& b = c.basis == SphBasis::real ? real_basis_tensor(lm.first, lm.second)
                                                      : basis_tensor(lm.first, lm.second);
            acc += v * harmonic_eval(b, n.theta(), n.phi());
        }
        value = acc;
    } else {
        throw ArgumentError("eval expects a polynomial, expansion or harmonic coefficients file");
    }

    json rep{{"command", "eval"},
             {"kind", kind},
             {"direction", {n.x, n.y, n.z}},
             {"value", {value.real(), value.imag()}}};
    char buf[256];
    if (std::abs(value.imag()) > 1e-14 * std::max(1.0, std::abs(value.real())))
        std::snprintf(buf, sizeof buf, "f(n) = %.15g + %.15gi\n", value.real(), value.imag());
    else
        std::snprintf(buf, sizeof buf, "f(n) = %.15g\n", value.real());
    emit(cfg, rep, buf);
    return 0;
}

int cmd_integrate(const Config& cfg, const std::string& f_path,
                  std::optional<std::string> g_path, bool check_quadrature) {
    auto f = io::polynomial_from_json(io::load_json_file(f_path));
    AngularPolynomial g;
    if (g_path) {
        g = io::polynomial_from_json(io::load_json_file(*g_path));
    } else {
        SymTensor<Exact> one(0, 3);
        one[0] = Exact(1);
        g.add_term(one);
    }
    const Exact exact = integrate_product(f, g);
    json rep{{"command", "integrate"}, {"exact", io::exact_to_json(exact)}};
    char buf[256];
    std::snprintf(buf, sizeof buf, "integral over the sphere: %s = %.15g\n",
                  exact.str().c_str(), exact.to_double());
    std::string text = buf;

    if (check_quadrature) {
        const int hint = cfg.quad_degree.value_or(f.max_rank() + std::max(0, g.max_rank()));
        const double numeric = oracle::integrate_sphere_real(
            [&](const UnitVec& n) { return f.eval(n) * g.eval(n); }, hint);
        const double resid = std::abs(numeric - exact.to_double());
        rep["quadrature"] = numeric;
        rep["quadrature_residual"] = resid;
        rep["within_tolerance"] = resid <= cfg.tolerance;
        std::snprintf(buf, sizeof buf, "quadrature cross-check: %.15g (residual %.3g)\n",
                      numeric, resid);
        text += buf;
        emit(cfg, rep, text);
        return resid <= cfg.tolerance ? 0 : 1;
    }
    emit(cfg, rep, text);
    return 0;
}

int cmd_demo_quadrupole(const Config& cfg, const std::string& q_path,
                        const std::array<double, 3>& k, double rmin, double rmax) {
    auto qt = io::tensor_from_json(io::load_json_file(q_path));
    if (qt.rank() != 2 || qt.dim() != 3)
        throw ArgumentError("demo-quadrupole expects a rank-2 tensor over 3 dimensions");
    const auto q = to_double_tensor(qt);
    const auto result = quadrupole_fourier_demo(q, k, rmin, rmax);

    json stages = json::array();
    std::string text = "quadrupole Fourier transform\n";
    char buf[256];
    for (const auto& s : result.refinements) {
        stages.push_back(json{{"rmin", s.rmin}, {"rmax", s.rmax}, {"value", s.value}});
        std::snprintf(buf, sizeof buf, "  cutoffs [%.1e, %.1e] -> %.12g\n", s.rmin, s.rmax,
                      s.value);
        text += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "numeric:     %.12g\nclosed form: %.12g\nrelative error: %.3e\n",
                  result.numeric, result.closed_form, result.rel_error);
    text += buf;

    json rep{{"command", "demo-quadrupole"},
             {"stages", stages},
             {"numeric", result.numeric},
             {"closed_form", result.closed_form},
             {"relative_error", result.rel_error}};
    emit(cfg, rep, text);
    return 0;
}

int cmd_verify(const Config& cfg, const std::string& suite, int lmax) {
    const auto rep = verify::run_suite(suite, lmax, cfg.tolerance);
    json rows = json::array();
    std::string text = "suite '" + rep.suite + "'\n";
    char buf[256];
    for (const auto& r : rep.rows) {
        rows.push_back(json{{"label", r.label},
                            {"residual", r.residual},
                            {"pass", r.pass},
                            {"note", r.note}});
        std::snprintf(buf, sizeof buf, "  %-28s residual %11.4e  %s%s%s\n", r.label.c_str(),
                      r.residual, r.pass ? "ok" : "FAIL", r.note.empty() ? "" : "  ",
                      r.note.c_str());
        text += buf;
    }
    text += rep.pass ? "all checks passed\n" : "FAILURES present\n";
    json jrep{{"command", "verify"}, {"suite", rep.suite}, {"rows", rows}, {"pass", rep.pass}};
    emit(cfg, jrep, text);
    return rep.pass ? 0 : 1;
}

} // namespace cli
} // namespace stf
