#include "stf/legendre.hpp"

#include <stdexcept>

namespace stf {

LegendrePoly legendre(int l) {
    if (l < 0) throw std::invalid_argument("legendre: negative degree");
    LegendrePoly p0;
    p0.degree_ = 0;
    p0.coeff_ = {Exact(1)};
    if (l == 0) return p0;
    LegendrePoly p1;
    p1.degree_ = 1;
    p1.coeff_ = {Exact(0), Exact(1)};
    for (int k = 1; k < l; ++k) {
        LegendrePoly next;
        next.degree_ = k + 1;
        next.coeff_.assign(static_cast<std::size_t>(k) + 2, Exact(0));
        const Exact a(2 * k + 1, k + 1), b(k, k + 1);
        for (int j = 0; j <= k; ++j)
            next.coeff_[static_cast<std::size_t>(j) + 1] += a * p1.coeff_[j];
        for (int j = 0; j < k; ++j)
            next.coeff_[j] -= b * p0.coeff_[j];
        p0 = std::move(p1);
        p1 = std::move(next);
    }
    return p1;
}

Exact moment_integral(int l) {
    if (l < 0) throw std::invalid_argument("moment_integral: negative power");
    if (l % 2 != 0) return Exact(0);
    return Exact(2, l + 1);
}

Exact legendre_inner(const LegendrePoly& a, const LegendrePoly& b) {
    Exact acc;
    const auto& ca = a.coefficients();
    const auto& cb = b.coefficients();
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ca[i].is_zero()) continue;
        for (std::size_t j = 0; j < cb.size(); ++j) {
            if (cb[j].is_zero()) continue;
            acc += ca[i] * cb[j] * moment_integral(static_cast<int>(i + j));
        }
    }
    return acc;
}

double legendre_eval(int l, double x) {
    if (l < 0) throw std::invalid_argument("legendre_eval: negative degree");
    if (l == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int k = 1; k < l; ++k) {
        double next = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
        pm1 = p;
        p = next;
    }
    return p;
}

} // namespace stf
