#pragma once

#include "stf/exact.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace stf {

/// Polynomial in the three cartesian components of a direction vector, with
/// Exact coefficients. Supports the normal form modulo x^2+y^2+z^2 = 1,
/// which decides equality of angular functions symbolically.
class Poly3 {
public:
    using Monomial = std::array<int, 3>;

    Poly3() = default;
    Poly3(long long c) { if (c != 0) terms_[{0, 0, 0}] = Exact(c); }
    explicit Poly3(const Exact& c) { if (!c.is_zero()) terms_[{0, 0, 0}] = c; }

    static Poly3 monomial(int a, int b, int c, Exact coeff = Exact(1)) {
        if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("Poly3: negative exponent");
        Poly3 p;
        if (!coeff.is_zero()) p.terms_[{a, b, c}] = std::move(coeff);
        return p;
    }

    const std::map<Monomial, Exact>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Poly3 operator-() const {
        Poly3 r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    Poly3& operator+=(const Poly3& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly3& operator-=(const Poly3& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly3& operator*=(const Poly3& o) {
        Poly3 r;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_)
                r.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
        *this = std::move(r);
        return *this;
    }
    friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
    friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
    friend Poly3 operator*(Poly3 a, const Poly3& b) { return a *= b; }
    friend bool operator==(const Poly3& a, const Poly3& b) { return a.terms_ == b.terms_; }

    Poly3 scaled(const Exact& f) const {
        Poly3 r;
        if (f.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.terms_[m] = c * f;
        return r;
    }

    double eval(double x, double y, double z) const {
        double acc = 0.0;
        for (const auto& [m, c] : terms_) {
            double t = c.to_double();
            for (int i = 0; i < m[0]; ++i) t *= x;
            for (int i = 0; i < m[1]; ++i) t *= y;
            for (int i = 0; i < m[2]; ++i) t *= z;
            acc += t;
        }
        return acc;
    }

    Exact eval_exact(const Rational& x, const Rational& y, const Rational& z) const {
        Exact acc;
        for (const auto& [m, c] : terms_) {
            Rational t = 1;
            for (int i = 0; i < m[0]; ++i) t *= x;
            for (int i = 0; i < m[1]; ++i) t *= y;
            for (int i = 0; i < m[2]; ++i) t *= z;
            acc += c * Exact(t);
        }
        return acc;
    }

    /// Normal form modulo the unit-sphere relation: substitutes
    /// z^2 -> 1 - x^2 - y^2 until the z-degree is at most 1. Two
    /// polynomials agree everywhere on the sphere iff their normal forms
    /// are identical.
    Poly3 sphere_normal_form() const {
        Poly3 r;
        for (const auto& [m, c] : terms_) {
            const int p = m[2] / 2, zr = m[2] % 2;
            // (1 - x^2 - y^2)^p expanded by trinomials
            for (int i = 0; i <= p; ++i) {
                for (int j = 0; i + j <= p; ++j) {
                    BigInt ways = factorial(p) / (factorial(i) * factorial(j) * factorial(p - i - j));
                    Exact coeff = c * Exact(Rational(ways));
                    if ((i + j) % 2 != 0) coeff = -coeff;
                    r.add_term({m[0] + 2 * i, m[1] + 2 * j, zr}, coeff);
                }
            }
        }
        return r;
    }

    bool equals_on_sphere(const Poly3& o) const {
        return sphere_normal_form() == o.sphere_normal_form();
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + m[2]);
        return d;
    }

private:
    void add_term(const Monomial& m, const Exact& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::map<Monomial, Exact> terms_;
};

template <>
inline Poly3 from_exact<Poly3>(const Exact& e) { return Poly3(e); }

template <>
inline bool scalar_is_zero<Poly3>(const Poly3& p) { return p.is_zero(); }

} // namespace stf
