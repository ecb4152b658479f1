#pragma once

#include "stf/maxwell.hpp"
#include "stf/sym_tensor.hpp"

#include <array>
#include <complex>
#include <map>

namespace stf {

/// Null-vector triple that ladders the azimuthal index: contracting a
/// direction with u(-1)/u(+1) multiplies by sin(theta) e^{-+i phi}, and
/// with u(0) by cos(theta).
std::array<CExact, 3> u_vector(int m);

/// Orthonormal symmetric-traceless basis tensor for (l, m). The entries
/// are Gaussian rationals times one overall square-root scale; the square
/// of the scale is stored exactly so orthonormality and conjugation
/// symmetry are decidable in rational arithmetic.
struct BasisTensor {
    int l = 0;
    int m = 0;
    Exact norm_sq;            // square of the scale factor
    StfTensor<CExact> core;   // tensor = sqrt(norm_sq) * core

    StfTensor<std::complex<double>> to_complex() const;
    double scale() const { return std::sqrt(norm_sq.to_double()); }
};

/// Basis tensor built from detraced u-vector products with the
/// sqrt(binom(2l, l-m)/2^l) prefactor. Cached per (l, m).
const BasisTensor& basis_tensor(int l, int m);

/// Real-valued orthonormal family spanning the same (2l+1)-dimensional
/// space: m = 0 keeps the complex-basis tensor (already real), m > 0 takes
/// sqrt(2) Re, m < 0 takes sqrt(2) Im of the |m| tensor. Cached per (l, m).
const BasisTensor& real_basis_tensor(int l, int m);

/// Conjugate full contraction sum_M mult(M) conj(a[M]) b[M].
CExact conj_contract(const StfTensor<CExact>& a, const StfTensor<CExact>& b);

enum class SphBasis { complex_standard, real };

/// Harmonic coefficients in a chosen basis family.
struct SphCoeffs {
    SphBasis basis = SphBasis::complex_standard;
    std::map<std::pair<int, int>, std::complex<double>> coeffs;
};

/// Coefficient conversion: f_{l,m} = sqrt(4 pi/(2l+1) binom(2l,l)/2^l)
/// times the (unconjugated) contraction of the basis tensor with f^(l).
SphCoeffs stf_to_sph(const MultipoleExpansion& e, SphBasis basis = SphBasis::complex_standard);

/// Inverse conversion. The reassembled tensors are re-detraced in exact
/// arithmetic after the float contraction, so the expansion invariant
/// (exactly traceless coefficients) is preserved. Coefficients that do not
/// describe a real function are rejected.
MultipoleExpansion sph_to_stf(const SphCoeffs& c);

/// Harmonic attached to an arbitrary basis tensor:
/// sqrt((2l+1)/(4 pi) 2^l/binom(2l,l)) P^(l)(n) . conj(basis).
std::complex<double> harmonic_eval(const BasisTensor& b, double theta, double phi);

/// Standard spherical harmonic through the tensor route. Matches the
/// associated-Legendre reference implementation with Condon-Shortley
/// phase, with no extra phase factor (verified in the test suite).
std::complex<double> ylm_eval(int l, int m, double theta, double phi);

} // namespace stf
