#pragma once

#include "stf/legendre.hpp"
#include "stf/poly3.hpp"
#include "stf/sym_tensor.hpp"
#include "stf/unit_vec.hpp"

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace stf {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Scalar angular function given as a finite sum of coefficient tensors
/// fully contracted with direction monomials:
///   f(n) = sum_k A^(k)_{i1..ir} n_{i1} ... n_{ir}.
/// Coefficients are exact; doubles entering through JSON are embedded
/// exactly, so the expansion pipeline below stays rational throughout.
class AngularPolynomial {
public:
    struct Term {
        int rank;
        SymTensor<Exact> coeff;
    };

    AngularPolynomial() = default;

    void add_term(SymTensor<Exact> coeff);
    const std::vector<Term>& terms() const { return terms_; }
    int max_rank() const;

    double eval(const UnitVec& n) const;
    Exact eval_exact(const Rational& x, const Rational& y, const Rational& z) const;
    Poly3 to_poly() const;

private:
    std::vector<Term> terms_;
};

/// Map order -> symmetric traceless coefficient tensor. The stored tensors
/// are exactly traceless; entries that are exactly zero are dropped.
class MultipoleExpansion {
public:
    const std::map<int, StfTensor<Exact>>& coefficients() const { return coeffs_; }
    void set(int l, StfTensor<Exact> t);
    int max_order() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
    bool empty() const { return coeffs_.empty(); }

    double reconstruct(const UnitVec& n) const;
    Exact reconstruct_exact(const Rational& x, const Rational& y, const Rational& z) const;
    Poly3 to_poly() const;

    /// Drops coefficients above l_max; returns true if anything was cut.
    bool truncate(int l_max);

private:
    std::map<int, StfTensor<Exact>> coeffs_;
};

/// The rank-l tensor harmonic as a symbolic object: each component is a
/// polynomial in the direction components. Built as the detraced l-fold
/// direction product scaled by the Legendre leading coefficient
/// binom(2l,l)/2^l; the classical closed forms are recovered on the sphere.
/// Cached per l; the reference stays valid for the program lifetime.
const StfTensor<Poly3>& maxwell_poly_tensor(int l);

/// Numeric evaluation at a direction. Computed in exact arithmetic on the
/// dyadic components and converted at the end, so traces vanish to
/// rounding and the cost stays modest through l ~ 10.
StfTensor<double> maxwell_eval(int l, const UnitVec& n);

/// Exact evaluation at a rational point (useful on rational points of the
/// unit sphere, where the reconstruction identity is exact).
StfTensor<Exact> maxwell_eval_exact(int l, const Rational& x, const Rational& y,
                                    const Rational& z);

/// Solid-angle integral of n_x^a n_y^b n_z^c: zero when any exponent is
/// odd, else 4 pi (a-1)!!(b-1)!!(c-1)!!/(l+1)!! with l = a+b+c, which is
/// 4 pi/(l+1) times the matching delta-product component.
Exact angular_integral_monomial(int a, int b, int c);

/// Termwise monomial integration of a polynomial over the sphere.
Exact integrate_poly_sphere(const Poly3& p);

/// Exact integral of f*g over the sphere.
Exact integrate_product(const AngularPolynomial& f, const AngularPolynomial& g);

/// Tensor symmetric within two index groups separately, stored as a matrix
/// over multiset pairs. Carrier for the pairwise component integrals of
/// two tensor harmonics.
struct BisymTensor {
    int rank_first = 0;
    int rank_second = 0;
    std::vector<Exact> comp; // row-major, multiset order in each group

    Exact& at(std::size_t i, std::size_t j);
    const Exact& at(std::size_t i, std::size_t j) const;
    bool is_zero() const;
};

/// Matrix of the symmetric-traceless projection in multiset coordinates:
/// row i, column j holds the full-index kernel value K[t_i, t_j], so that
/// T_stf[t_i] = sum over all t_j of K[t_i,t_j] T[t_j].
std::vector<std::vector<Exact>> stf_projector_kernel(int l);

/// Componentwise integrals of P^(l) (x) P^(l'): the zero tensor when the
/// orders differ, else 4 pi/(2l+1) * binom(2l,l)/2^l times the projection
/// kernel.
BisymTensor orthogonality_tensor(int l, int lp);

/// Exact multipole coefficients of an angular polynomial. Finite by
/// construction: only orders up to the maximum term rank, with matching
/// parity, can survive the monomial integration.
MultipoleExpansion expand(const AngularPolynomial& f);

struct GeneratingSum {
    double partial_sum;
    double closed_form;
};
/// Partial sum over l <= L of P^(l)(n) contracted with the l-fold outer
/// power of q, against the closed form 1/sqrt(1 - 2 n.q + |q|^2).
/// Requires |q| < 1; the tail is bounded by |q|^{L+1}/(1-|q|).
GeneratingSum generating_partial_sum(const UnitVec& n, const std::array<double, 3>& q, int L);

struct RecurrenceResidual {
    double three_term;   // (2l+1) n_j P^(l) = (l+1) P^(l+1) + (2l-1) detraced delta term
    double contraction;  // n_j P^(l)_{j...} = P^(l-1)
};
RecurrenceResidual recurrence_check(int l, const UnitVec& n);

struct LegendreLink {
    double dot_power_side;   // s^(x l) . P^(l)(n)
    double product_side;     // P^(l)(s) . P^(l)(n)
    double legendre_value;   // P_l(n.s)
    double leading_coeff;    // binom(2l,l)/2^l
};
LegendreLink link_to_legendre(int l, const UnitVec& n, const UnitVec& s);

struct FunkHeckeOptions {
    int initial_nodes = 32;
    double tol = 1e-12;
    int max_nodes = 1 << 15;
};
/// Zonal integral: integral of P^(l)(n) f(n.s) over the sphere equals
/// 2 pi P^(l)(s) times the 1D integral of P_l(x) f(x). The 1D factor is
/// computed by node-doubling Gauss-Legendre quadrature and throws on
/// non-convergence.
StfTensor<std::complex<double>> funk_hecke(int l,
                                           const std::function<std::complex<double>(double)>& f,
                                           const UnitVec& s,
                                           const FunkHeckeOptions& opts = {});

/// Covariant rotation of a symmetric traceless tensor; R must be
/// orthogonal within 1e-10.
StfTensor<double> rotate(int l, const Mat3& r, const StfTensor<double>& t);

struct QuadrupoleResult {
    double numeric;
    double closed_form;
    double rel_error;
    struct Stage {
        double rmin, rmax, value;
    };
    std::vector<Stage> refinements; // widening cutoff windows, last = requested
};
/// Fourier transform of the quadrupole potential (n.Q.n)/r^3: the zonal
/// reduction collapses the angular integral, and the radial factor is
/// integrated numerically between explicit cutoffs, reported against the
/// closed form -(4 pi/3) k.Q.k / k^2.
QuadrupoleResult quadrupole_fourier_demo(const SymTensor<double>& q,
                                         const std::array<double, 3>& k,
                                         double rmin = 1e-4, double rmax = 1e4);

// small helpers shared with the harmonics/verification layers
SymTensor<double> outer_power(const std::array<double, 3>& v, int l);
SymTensor<Exact> outer_power_exact(const Rational& x, const Rational& y, const Rational& z, int l);
SymTensor<double> to_double_tensor(const SymTensor<Exact>& t);
StfTensor<double> to_double_tensor(const StfTensor<Exact>& t);
/// binom(2l,l)/2^l as an exact scalar.
Exact legendre_leading_coefficient(int l);

} // namespace stf
