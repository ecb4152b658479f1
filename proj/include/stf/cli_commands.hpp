#pragma once

#include <array>
#include <optional>
#include <string>

namespace stf {
namespace cli {

struct Config {
    double tolerance = 1e-10;
    std::string format = "text"; // "text" | "json"
    int lmax = 8;
    std::optional<int> quad_degree;

    void validate() const;
};

// Exit-code contract: 0 ok, 2 parse failure, 3 bad argument, 4 violated
// precondition. Each command returns 0 and reports through stdout; errors
// are thrown as the typed exceptions in errors.hpp and mapped in main.

int cmd_detrace(const Config& cfg, const std::string& in_path, const std::string& out_path);
int cmd_expand(const Config& cfg, const std::string& in_path, const std::string& out_path,
               std::optional<int> lmax_override);
int cmd_convert(const Config& cfg, const std::string& in_path, const std::string& to,
                std::optional<std::string> basis, const std::string& out_path);
int cmd_eval(const Config& cfg, const std::string& in_path, std::optional<double> theta,
             std::optional<double> phi, std::optional<std::array<double, 3>> dir);
int cmd_integrate(const Config& cfg, const std::string& f_path,
                  std::optional<std::string> g_path, bool check_quadrature);
int cmd_demo_quadrupole(const Config& cfg, const std::string& q_path,
                        const std::array<double, 3>& k, double rmin, double rmax);
int cmd_verify(const Config& cfg, const std::string& suite, int lmax);

} // namespace cli
} // namespace stf
