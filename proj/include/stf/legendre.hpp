#pragma once

#include "stf/exact.hpp"

#include <vector>

namespace stf {

/// Legendre polynomial with exact rational coefficients, in the convention
/// P_l(1) = 1. Built by the three-term recurrence
///   (l+1) P_{l+1} = (2l+1) x P_l - l P_{l-1},
/// which produces the same polynomials as Gram-Schmidt on the monomials
/// but in O(l^2) coefficient operations.
class LegendrePoly {
public:
    int degree() const { return degree_; }
    const std::vector<Exact>& coefficients() const { return coeff_; }

    double eval(double x) const {
        double acc = 0.0;
        for (std::size_t i = coeff_.size(); i-- > 0;)
            acc = acc * x + coeff_[i].to_double();
        return acc;
    }

    Exact eval_exact(const Rational& x) const {
        Exact acc;
        for (std::size_t i = coeff_.size(); i-- > 0;) {
            acc *= Exact(x);
            acc += coeff_[i];
        }
        return acc;
    }

    friend LegendrePoly legendre(int l);

private:
    int degree_ = 0;
    std::vector<Exact> coeff_; // coeff_[k] multiplies x^k
};

LegendrePoly legendre(int l);

/// Integral of x^l over [-1, 1]: 2/(l+1) for even l, 0 for odd l.
Exact moment_integral(int l);

/// Exact inner product on [-1, 1], expanded through moment_integral.
/// Equals 2 delta_{ll'} / (2l+1) on the Legendre family.
Exact legendre_inner(const LegendrePoly& a, const LegendrePoly& b);

/// P_l(x) by the double-precision recurrence (no coefficient expansion);
/// the evaluation path used in quadrature loops.
double legendre_eval(int l, double x);

} // namespace stf
