#include "stf/cli_commands.hpp"
#include "stf/errors.hpp"
#include "stf/oracle.hpp"

#include "CLI11.hpp"

#include <array>
#include <iostream>
#include <optional>
#include <string>

namespace {

std::array<double, 3> parse_vec3(const std::string& s) {
    std::array<double, 3> v{};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        std::size_t used = 0;
        try {
            v[i] = std::stod(s.substr(pos), &used);
        } catch (...) {
            throw stf::ArgumentError("expected 'x,y,z' vector, got '" + s + "'");
        }
        pos += used;
        if (i < 2) {
            if (pos >= s.size() || s[pos] != ',')
                throw stf::ArgumentError("expected 'x,y,z' vector, got '" + s + "'");
            ++pos;
        }
    }
    if (pos != s.size()) throw stf::ArgumentError("expected 'x,y,z' vector, got '" + s + "'");
    return v;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric trace-free tensor harmonics toolkit"};
    app.require_subcommand(1);

    stf::cli::Config cfg;
    app.add_option("--tolerance", cfg.tolerance, "pass/fail tolerance for numeric checks");
    app.add_option("--format", cfg.format, "report format: text or json");
    app.add_option("--lmax", cfg.lmax, "default maximum order");
    int quad_degree = -1;
    app.add_option("--quad-degree", quad_degree, "override quadrature degree hint");

    std::string in_path, out_path, to, suite = "eq19";
    std::optional<std::string> basis_opt;
    std::string basis_raw, g_path_raw, dir_raw, k_raw;
    double theta = 0.0, phi = 0.0, rmin = 1e-4, rmax = 1e4;
    int verify_lmax = -1;
    std::optional<int> expand_lmax;
    int expand_lmax_raw = -1;
    bool check_quadrature = false;

    auto* c_detrace = app.add_subcommand("detrace", "project a tensor onto its traceless part");
    c_detrace->add_option("input", in_path, "tensor JSON file")->required();
    c_detrace->add_option("output", out_path, "output tensor JSON file")->required();

    auto* c_expand = app.add_subcommand("expand", "multipole-expand an angular polynomial");
    c_expand->add_option("input", in_path, "polynomial JSON file")->required();
    c_expand->add_option("output", out_path, "expansion JSON file")->required();
    c_expand->add_option("--lmax", expand_lmax_raw, "truncate the expansion at this order");

    auto* c_convert = app.add_subcommand("convert", "convert between coefficient forms");
    c_convert->add_option("input", in_path, "input JSON file")->required();
    c_convert->add_option("output", out_path, "output JSON file")->required();
    c_convert->add_option("--to", to, "target form: stf or sph")->required();
    c_convert->add_option("--basis", basis_raw, "harmonic basis: complex or real");

    auto* c_eval = app.add_subcommand("eval", "evaluate a stored angular function");
    c_eval->add_option("input", in_path, "polynomial/expansion/harmonics JSON file")->required();
    auto* theta_opt = c_eval->add_option("--theta", theta, "polar angle");
    auto* phi_opt = c_eval->add_option("--phi", phi, "azimuthal angle");
    auto* dir_opt = c_eval->add_option("--dir", dir_raw, "direction as 'x,y,z'");

    auto* c_integrate = app.add_subcommand("integrate", "integrate a product over the sphere");
    c_integrate->add_option("--f", in_path, "polynomial JSON file")->required();
    auto* g_opt = c_integrate->add_option("--g", g_path_raw, "second polynomial JSON file");
    c_integrate->add_flag("--check-quadrature", check_quadrature,
                          "cross-check against sphere quadrature");

    auto* c_demo = app.add_subcommand("demo-quadrupole",
                                      "Fourier transform of a quadrupole potential");
    c_demo->add_option("--q", in_path, "traceless rank-2 tensor JSON file")->required();
    c_demo->add_option("--k", k_raw, "wave vector as 'x,y,z'")->required();
    c_demo->add_option("--rmin", rmin, "inner radial cutoff");
    c_demo->add_option("--rmax", rmax, "outer radial cutoff");

    auto* c_verify = app.add_subcommand("verify", "run a named invariant suite");
    c_verify->add_option("--suite", suite,
                         "orthogonality|recurrence|laplacian|eq19|basis")->required();
    c_verify->add_option("--lmax", verify_lmax, "maximum order for the suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 3;
    }

    try {
        if (quad_degree >= 0) cfg.quad_degree = quad_degree;
        cfg.validate();
        if (expand_lmax_raw >= 0) expand_lmax = expand_lmax_raw;

        if (*c_detrace) return stf::cli::cmd_detrace(cfg, in_path, out_path);
        if (*c_expand) return stf::cli::cmd_expand(cfg, in_path, out_path, expand_lmax);
        if (*c_convert) {
            if (!basis_raw.empty()) basis_opt = basis_raw;
            return stf::cli::cmd_convert(cfg, in_path, to, basis_opt, out_path);
        }
        if (*c_eval) {
            std::optional<double> th, ph;
            std::optional<std::array<double, 3>> dir;
            if (*theta_opt) th = theta;
            if (*phi_opt) ph = phi;
            if (*dir_opt) dir = parse_vec3(dir_raw);
            return stf::cli::cmd_eval(cfg, in_path, th, ph, dir);
        }
        if (*c_integrate) {
            std::optional<std::string> g;
            if (*g_opt) g = g_path_raw;
            return stf::cli::cmd_integrate(cfg, in_path, g, check_quadrature);
        }
        if (*c_demo) return stf::cli::cmd_demo_quadrupole(cfg, in_path, parse_vec3(k_raw), rmin, rmax);
        if (*c_verify)
            return stf::cli::cmd_verify(cfg, suite, verify_lmax >= 0 ? verify_lmax : cfg.lmax);
        return 3;
    } catch (const stf::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const stf::ArgumentError& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 3;
    } catch (const stf::PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 4;
    } catch (const stf::oracle::QuadratureError& e) {
        std::cerr << "quadrature error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
