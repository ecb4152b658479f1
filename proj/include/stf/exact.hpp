#pragma once

#include "stf/combinatorics.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stf {

using Rational = boost::multiprecision::cpp_rational;

/// Exact scalar: a rational number times an optional symbolic power of pi.
/// Every coefficient in the tensor algebra is of this form, which is what
/// makes "trace is exactly zero" a decidable assertion rather than a
/// tolerance check. Addition requires matching pi powers (zero matches
/// anything); multiplication adds them. In practice powers stay in {0, 1}.
class Exact {
public:
    Exact() = default;
    Exact(long long v) : rat_(v) {}
    template <std::integral A, std::integral B>
    Exact(A num, B den) : rat_(static_cast<long long>(num), static_cast<long long>(den)) {
        if (den == 0) throw std::invalid_argument("Exact: zero denominator");
    }
    explicit Exact(Rational r, int pi_pow = 0) : rat_(std::move(r)), pi_pow_(pi_pow) {
        normalize();
    }
    explicit Exact(BigInt n) : rat_(std::move(n)) {}

    static Exact pi() { return Exact(Rational(1), 1); }

    /// Exact embedding of a finite double (every finite double is dyadic).
    static Exact from_double(double v) {
        if (!std::isfinite(v)) throw std::invalid_argument("Exact::from_double: non-finite");
        return Exact(Rational(v));
    }

    const Rational& rational() const { return rat_; }
    int pi_power() const { return pi_pow_; }
    bool is_zero() const { return rat_.is_zero(); }

    double to_double() const {
        double v = rat_.convert_to<double>();
        for (int i = 0; i < pi_pow_; ++i) v *= std::numbers::pi;
        for (int i = 0; i > pi_pow_; --i) v /= std::numbers::pi;
        return v;
    }

    Exact operator-() const { return Exact(-rat_, pi_pow_); }

    Exact& operator+=(const Exact& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) { *this = o; return *this; }
        if (pi_pow_ != o.pi_pow_)
            throw std::domain_error("Exact: adding values with different pi powers");
        rat_ += o.rat_;
        normalize();
        return *this;
    }
    Exact& operator-=(const Exact& o) { return *this += (-o); }
    Exact& operator*=(const Exact& o) {
        pi_pow_ += o.pi_pow_;
        rat_ *= o.rat_;
        normalize();
        return *this;
    }
    Exact& operator/=(const Exact& o) {
        if (o.is_zero()) throw std::domain_error("Exact: division by zero");
        pi_pow_ -= o.pi_pow_;
        rat_ /= o.rat_;
        normalize();
        return *this;
    }

    friend Exact operator+(Exact a, const Exact& b) { return a += b; }
    friend Exact operator-(Exact a, const Exact& b) { return a -= b; }
    friend Exact operator*(Exact a, const Exact& b) { return a *= b; }
    friend Exact operator/(Exact a, const Exact& b) { return a /= b; }
    friend bool operator==(const Exact& a, const Exact& b) {
        return a.rat_ == b.rat_ && a.pi_pow_ == b.pi_pow_;
    }
    friend bool operator!=(const Exact& a, const Exact& b) { return !(a == b); }

    /// "p/q", "p", optionally suffixed with " pi".
    std::string str() const {
        std::ostringstream os;
        os << numerator(rat_);
        if (denominator(rat_) != 1) os << "/" << denominator(rat_);
        if (pi_pow_ == 1) os << " pi";
        else if (pi_pow_ != 0) os << " pi^" << pi_pow_;
        return os.str();
    }

    /// Parses "p", "p/q", with optional " pi" / " pi^k" suffix.
    static std::optional<Exact> parse(std::string_view s);

private:
    void normalize() {
        if (rat_.is_zero()) pi_pow_ = 0;
    }

    Rational rat_ = 0;
    int pi_pow_ = 0;
};

inline std::optional<Exact> Exact::parse(std::string_view s) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return v;
    };
    s = trim(s);
    int pi_pow = 0;
    if (auto pos = s.rfind("pi"); pos != std::string_view::npos) {
        std::string_view tail = s.substr(pos + 2);
        if (tail.empty()) pi_pow = 1;
        else if (tail[0] == '^') {
            try { pi_pow = std::stoi(std::string(tail.substr(1))); }
            catch (...) { return std::nullopt; }
        } else return std::nullopt;
        s = trim(s.substr(0, pos));
        if (s.empty()) s = "1";
    }
    try {
        std::string body(s);
        if (body.empty()) return std::nullopt;
        for (char c : body)
            if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
                return std::nullopt;
        Rational r(body);
        return Exact(r, pi_pow);
    } catch (...) {
        return std::nullopt;
    }
}

inline Exact exact_binomial(int n, int k) { return Exact(binomial(n, k)); }

/// Complex scalar with exact rational parts (Gaussian rational). Used for
/// the harmonic basis tensors, whose entries are Gaussian rationals up to
/// one overall square-root prefactor that is tracked separately.
struct CExact {
    Rational re = 0, im = 0;

    CExact() = default;
    CExact(long long r) : re(r) {}
    CExact(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    CExact conj() const { return CExact(re, -im); }
    std::complex<double> to_complex() const {
        return {re.convert_to<double>(), im.convert_to<double>()};
    }

    CExact operator-() const { return CExact(-re, -im); }
    CExact& operator+=(const CExact& o) { re += o.re; im += o.im; return *this; }
    CExact& operator-=(const CExact& o) { re -= o.re; im -= o.im; return *this; }
    CExact& operator*=(const CExact& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    friend CExact operator+(CExact a, const CExact& b) { return a += b; }
    friend CExact operator-(CExact a, const CExact& b) { return a -= b; }
    friend CExact operator*(CExact a, const CExact& b) { return a *= b; }
    friend bool operator==(const CExact& a, const CExact& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const CExact& a, const CExact& b) { return !(a == b); }
};

// Scalar bridge: lets the templated tensor code scale any supported
// component type by an Exact coefficient.
template <class S>
S from_exact(const Exact& e);

template <>
inline Exact from_exact<Exact>(const Exact& e) { return e; }

template <>
inline double from_exact<double>(const Exact& e) { return e.to_double(); }

template <>
inline std::complex<double> from_exact<std::complex<double>>(const Exact& e) {
    return {e.to_double(), 0.0};
}

template <>
inline CExact from_exact<CExact>(const Exact& e) {
    if (e.pi_power() != 0)
        throw std::domain_error("CExact: pi-carrying coefficient not representable");
    return CExact(e.rational());
}

template <class S>
inline bool scalar_is_zero(const S& s) { return s.is_zero(); }
template <>
inline bool scalar_is_zero<double>(const double& s) { return s == 0.0; }
template <>
inline bool scalar_is_zero<std::complex<double>>(const std::complex<double>& s) {
    return s == std::complex<double>(0.0, 0.0);
}

} // namespace stf
