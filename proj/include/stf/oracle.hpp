#pragma once

#include "stf/exact.hpp"
#include "stf/unit_vec.hpp"

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace stf {
namespace oracle {

/// Raised when a quadrature fails its own node-doubling consistency check.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree
/// <= 2n - 1. Rules are cached per node count.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre_rule(int n);

/// 1D integral over [-1, 1] with a fixed rule.
double integrate_gauss(const std::function<double(double)>& f, int nodes);
std::complex<double> integrate_gauss_c(const std::function<std::complex<double>(double)>& f,
                                       int nodes);

/// Adaptive wrapper: doubles the node count until two successive results
/// agree within tol (relative to max(1,|I|)); throws QuadratureError if
/// max_nodes is reached first.
std::complex<double> integrate_gauss_adaptive(
    const std::function<std::complex<double>(double)>& f,
    int initial_nodes, double tol = 1e-12, int max_nodes = 1 << 15);

/// Product rule on the sphere: Gauss-Legendre in cos(theta) times a
/// uniform grid in phi. Exact (to rounding) for integrands polynomial in
/// the direction components of total degree <= min(2 n_theta - 1,
/// n_phi - 1). Accumulation is compensated and sequential, so results are
/// reproducible regardless of the caller's threading.
class SphereQuadrature {
public:
    SphereQuadrature(int n_theta, int n_phi);

    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }

    struct Node {
        UnitVec dir;
        double theta;
        double phi;
        double weight;
    };
    const std::vector<Node>& nodes() const { return nodes_; }

    double integrate(const std::function<double(const UnitVec&)>& f) const;
    std::complex<double> integrate_c(
        const std::function<std::complex<double>(const UnitVec&)>& f) const;

private:
    int n_theta_, n_phi_;
    std::vector<Node> nodes_;
};

/// Sphere integral sized from a polynomial degree hint, verified by
/// doubling the node counts; throws QuadratureError when the doubled grid
/// moves the result by more than tol.
std::complex<double> integrate_sphere(
    const std::function<std::complex<double>(const UnitVec&)>& f,
    int degree_hint, double tol = 1e-12);
double integrate_sphere_real(const std::function<double(const UnitVec&)>& f,
                             int degree_hint, double tol = 1e-12);

/// The two 1D closed forms behind the unit-vector monomial integral, for
/// the monomial with exponents (2m, 2(n-m), 2(M-n)):
///   first:  integral over phi of cos^{2m} sin^{2(n-m)}      (carries pi)
///   second: integral over theta of sin^{2n+1} cos^{2(M-n)}  (rational)
/// Their product is the full solid-angle integral of the monomial.
std::pair<Exact, Exact> gamma_integrals(int m, int n, int M);

/// Orthonormal spherical harmonics built from the associated Legendre
/// recurrence (fully normalized, Condon-Shortley phase). Stable well past
/// l = 20. Independent of the tensor-based evaluation path by design.
std::complex<double> reference_ylm(int l, int m, double theta, double phi);

/// Second-order central-difference estimate of the angular Laplacian
///   (1/sin t) d/dt (sin t d f/dt) + (1/sin^2 t) d^2 f/dp^2
/// at (theta, phi). Requires sin(theta) > 0.1.
double fd_angular_laplacian(const std::function<double(double, double)>& f,
                            double theta, double phi, double h);

} // namespace oracle
} // namespace stf
