#include "stf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace stf {
namespace oracle {

namespace {

// Kahan-compensated accumulator; keeps quadrature sums deterministic and
// tight even with tens of thousands of nodes.
struct Compensated {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

GaussRule compute_gauss_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton on P_n with the classical initial guesses; symmetric pairs.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < n; ++k) {
                double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace

const GaussRule& gauss_legendre_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_rule: need at least one node");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_rule(n)).first;
    return it->second;
}

double integrate_gauss(const std::function<double(double)>& f, int nodes) {
    const auto& rule = gauss_legendre_rule(nodes);
    Compensated acc;
    for (int i = 0; i < nodes; ++i) acc.add(rule.weights[i] * f(rule.nodes[i]));
    return acc.sum;
}

std::complex<double> integrate_gauss_c(const std::function<std::complex<double>(double)>& f,
                                       int nodes) {
    const auto& rule = gauss_legendre_rule(nodes);
    Compensated re, im;
    for (int i = 0; i < nodes; ++i) {
        std::complex<double> v = f(rule.nodes[i]);
        re.add(rule.weights[i] * v.real());
        im.add(rule.weights[i] * v.imag());
    }
    return {re.sum, im.sum};
}

std::complex<double> integrate_gauss_adaptive(
    const std::function<std::complex<double>(double)>& f,
    int initial_nodes, double tol, int max_nodes) {
    int n = std::max(2, initial_nodes);
    std::complex<double> prev = integrate_gauss_c(f, n);
    while (n <= max_nodes) {
        int n2 = 2 * n;
        std::complex<double> cur = integrate_gauss_c(f, n2);
        double scale = std::max(1.0, std::abs(cur));
        if (std::abs(cur - prev) <= tol * scale) return cur;
        prev = cur;
        n = n2;
    }
    throw QuadratureError("integrate_gauss_adaptive: no convergence at max node count");
}

SphereQuadrature::SphereQuadrature(int n_theta, int n_phi)
    : n_theta_(n_theta), n_phi_(n_phi) {
    if (n_theta < 1 || n_phi < 1)
        throw std::invalid_argument("SphereQuadrature: node counts must be positive");
    const auto& rule = gauss_legendre_rule(n_theta);
    nodes_.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    const double wphi = 2.0 * std::numbers::pi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        const double ct = rule.nodes[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < n_phi; ++j) {
            const double phi = (2.0 * std::numbers::pi * j) / n_phi;
            Node nd;
            nd.dir = UnitVec(st * std::cos(phi), st * std::sin(phi), ct);
            nd.theta = std::acos(std::max(-1.0, std::min(1.0, ct)));
            nd.phi = phi;
            nd.weight = rule.weights[i] * wphi;
            nodes_.push_back(nd);
        }
    }
}

double SphereQuadrature::integrate(const std::function<double(const UnitVec&)>& f) const {
    Compensated acc;
    for (const auto& nd : nodes_) acc.add(nd.weight * f(nd.dir));
    return acc.sum;
}

std::complex<double> SphereQuadrature::integrate_c(
    const std::function<std::complex<double>(const UnitVec&)>& f) const {
    Compensated re, im;
    for (const auto& nd : nodes_) {
        std::complex<double> v = f(nd.dir);
        re.add(nd.weight * v.real());
        im.add(nd.weight * v.imag());
    }
    return {re.sum, im.sum};
}

std::complex<double> integrate_sphere(
    const std::function<std::complex<double>(const UnitVec&)>& f,
    int degree_hint, double tol) {
    if (degree_hint < 0) throw std::invalid_argument("integrate_sphere: negative degree hint");
    const int nt = degree_hint / 2 + 4;
    const int np = degree_hint + 5;
    SphereQuadrature coarse(nt, np);
    SphereQuadrature fine(2 * nt, 2 * np);
    std::complex<double> a = coarse.integrate_c(f);
    std::complex<double> b = fine.integrate_c(f);
    double scale = std::max(1.0, std::abs(b));
    if (std::abs(a - b) > tol * scale)
        throw QuadratureError("integrate_sphere: node doubling changed the result beyond tolerance");
    return b;
}

double integrate_sphere_real(const std::function<double(const UnitVec&)>& f,
                             int degree_hint, double tol) {
    auto wrapped = [&](const UnitVec& n) { return std::complex<double>(f(n), 0.0); };
    return integrate_sphere(wrapped, degree_hint, tol).real();
}

std::pair<Exact, Exact> gamma_integrals(int m, int n, int M) {
    if (!(0 <= m && m <= n && n <= M))
        throw std::invalid_argument("gamma_integrals: need 0 <= m <= n <= M");
    const int j = n - m;  // half the sin power in the phi integral
    const int K = M - n;  // half the cos power in the theta integral
    // 2 pi (2m-1)!!(2j-1)!!/(2m+2j)!!
    Exact phi_part = Exact(Rational(2 * double_factorial(2 * m - 1) * double_factorial(2 * j - 1),
                                    double_factorial(2 * m + 2 * j)),
                           1);
    // 2 (2n)!!(2K-1)!!/(2n+2K+1)!!
    Exact theta_part(Rational(2 * double_factorial(2 * n) * double_factorial(2 * K - 1),
                              double_factorial(2 * n + 2 * K + 1)));
    return {phi_part, theta_part};
}

std::complex<double> reference_ylm(int l, int m, double theta, double phi) {
    if (std::abs(m) > l) throw std::invalid_argument("reference_ylm: |m| > l");
    const int am = std::abs(m);
    const double ct = std::cos(theta), st = std::sin(theta);
    // Fully normalized associated Legendre values, Condon-Shortley phase:
    // the (-1)^m is accumulated through the diagonal recurrence.
    double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int k = 1; k <= am; ++k)
        pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * st;
    double val;
    if (l == am) {
        val = pmm;
    } else {
        double pm1 = pmm;
        double p = std::sqrt(2.0 * am + 3.0) * ct * pmm;
        for (int k = am + 2; k <= l; ++k) {
            const double a = std::sqrt((4.0 * k * k - 1.0) / (double(k) * k - double(am) * am));
            const double b = std::sqrt((double(k - 1) * (k - 1) - double(am) * am) /
                                       (4.0 * double(k - 1) * (k - 1) - 1.0));
            const double next = a * (ct * p - b * pm1);
            pm1 = p;
            p = next;
        }
        val = p;
    }
    std::complex<double> out = val * std::exp(std::complex<double>(0.0, am * phi));
    if (m < 0) {
        out = std::conj(out);
        if (am % 2 != 0) out = -out;
    }
    return out;
}

double fd_angular_laplacian(const std::function<double(double, double)>& f,
                            double theta, double phi, double h) {
    if (h <= 0.0) throw std::invalid_argument("fd_angular_laplacian: h must be positive");
    const double st = std::sin(theta);
    if (st <= 0.1)
        throw std::invalid_argument("fd_angular_laplacian: too close to a pole (sin theta <= 0.1)");
    // conservative form of the theta term keeps the O(h^2) truncation clean
    const double sp = std::sin(theta + 0.5 * h);
    const double sm = std::sin(theta - 0.5 * h);
    const double f0 = f(theta, phi);
    const double theta_term =
        (sp * (f(theta + h, phi) - f0) - sm * (f0 - f(theta - h, phi))) / (h * h * st);
    const double phi_term =
        (f(theta, phi + h) - 2.0 * f0 + f(theta, phi - h)) / (h * h * st * st);
    return theta_term + phi_term;
}

} // namespace oracle
} // namespace stf
