#include "stf/harmonics.hpp"

#include "stf/errors.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

namespace stf {

std::array<CExact, 3> u_vector(int m) {
    switch (m) {
        case -1: return {CExact(1), CExact(Rational(0), Rational(1)), CExact(0)};
        case 0:  return {CExact(0), CExact(0), CExact(1)};
        case 1:  return {CExact(-1), CExact(Rational(0), Rational(1)), CExact(0)};
        default: throw std::invalid_argument("u_vector: m must be -1, 0 or 1");
    }
}

StfTensor<std::complex<double>> BasisTensor::to_complex() const {
    const double s = scale();
    SymTensor<std::complex<double>> out(core.rank(), 3);
    for (std::size_t i = 0; i < core.size(); ++i) out[i] = s * core[i].to_complex();
    return StfTensor<std::complex<double>>::from_traceless_unchecked(std::move(out));
}

namespace {

BasisTensor build_basis_tensor(int l, int m) {
    if (std::abs(m) > l) throw std::invalid_argument("basis_tensor: |m| > l");
    const auto u_step = u_vector(m >= 0 ? 1 : -1);
    const auto u_axis = u_vector(0);

    SymTensor<CExact> prod(0, 3);
    prod[0] = CExact(1);
    auto append = [&](const std::array<CExact, 3>& v) {
        SymTensor<CExact> vec(1, 3);
        for (int i = 0; i < 3; ++i) {
            std::array<int, 3> e{0, 0, 0};
            e[i] = 1;
            vec.at_exps(e) = v[i];
        }
        prod = sym_outer(prod, vec);
    };
    for (int i = 0; i < std::abs(m); ++i) append(u_step);
    for (int i = std::abs(m); i < l; ++i) append(u_axis);

    BasisTensor out;
    out.l = l;
    out.m = m;
    out.norm_sq = Exact(Rational(binomial(2 * l, l - m), BigInt(1) << l));
    out.core = detrace(prod);
    return out;
}

BasisTensor build_real_basis_tensor(int l, int m) {
    if (std::abs(m) > l) throw std::invalid_argument("real_basis_tensor: |m| > l");
    const BasisTensor& c = basis_tensor(l, std::abs(m));
    BasisTensor out;
    out.l = l;
    out.m = m;
    if (m == 0) {
        out.norm_sq = c.norm_sq;
        out.core = c.core;
        return out;
    }
    out.norm_sq = Exact(2) * c.norm_sq;
    SymTensor<CExact> part(l, 3);
    for (std::size_t i = 0; i < c.core.size(); ++i)
        part[i] = (m > 0) ? CExact(c.core[i].re) : CExact(c.core[i].im);
    out.core = StfTensor<CExact>::from_traceless_unchecked(std::move(part));
    return out;
}

} // namespace

const BasisTensor& basis_tensor(int l, int m) {
    static std::map<std::pair<int, int>, BasisTensor> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(l, m);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_basis_tensor(l, m)).first;
    return it->second;
}

const BasisTensor& real_basis_tensor(int l, int m) {
    static std::map<std::pair<int, int>, BasisTensor> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(l, m);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_real_basis_tensor(l, m)).first;
    return it->second;
}

CExact conj_contract(const StfTensor<CExact>& a, const StfTensor<CExact>& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("conj_contract: rank mismatch");
    CExact acc;
    const auto exps = a.sym().exponent_list();
    for (std::size_t i = 0; i < exps.size(); ++i)
        acc += a[i].conj() * b[i] * CExact(Rational(multiset_multiplicity(exps[i])));
    return acc;
}

namespace {

const BasisTensor& pick_basis(SphBasis basis, int l, int m) {
    return basis == SphBasis::real ? real_basis_tensor(l, m) : basis_tensor(l, m);
}

double conversion_factor(int l) {
    // sqrt(4 pi/(2l+1) * binom(2l,l)/2^l)
    return std::sqrt(4.0 * std::numbers::pi / (2 * l + 1) *
                     legendre_leading_coefficient(l).to_double());
}

} // namespace

SphCoeffs stf_to_sph(const MultipoleExpansion& e, SphBasis basis) {
    SphCoeffs out;
    out.basis = basis;
    for (const auto& [l, coeff] : e.coefficients()) {
        const auto cd = to_double_tensor(coeff);
        const double kappa = conversion_factor(l);
        const auto exps = cd.sym().exponent_list();
        for (int m = -l; m <= l; ++m) {
            const BasisTensor& b = pick_basis(basis, l, m);
            const double s = b.scale();
            std::complex<double> acc = 0.0;
            for (std::size_t i = 0; i < exps.size(); ++i)
                acc += multiset_multiplicity(exps[i]).convert_to<double>() *
                       (s * b.core[i].to_complex()) * cd[i];
            acc *= kappa;
            if (std::abs(acc) > 0.0) out.coeffs[{l, m}] = acc;
        }
    }
    return out;
}

MultipoleExpansion sph_to_stf(const SphCoeffs& c) {
    MultipoleExpansion out;
    std::map<int, SymTensor<std::complex<double>>> acc;
    double scale = 0.0;
    for (const auto& [lm, v] : c.coeffs) scale = std::max(scale, std::abs(v));
    for (const auto& [lm, v] : c.coeffs) {
        const auto [l, m] = lm;
        if (std::abs(m) > l) throw ParseError("sph_to_stf: coefficient with |m| > l");
        auto it = acc.find(l);
        if (it == acc.end()) it = acc.emplace(l, SymTensor<std::complex<double>>(l, 3)).first;
        const BasisTensor& b = pick_basis(c.basis, l, m);
        const double s = b.scale();
        for (std::size_t i = 0; i < it->second.size(); ++i)
            it->second[i] += v / conversion_factor(l) * std::conj(s * b.core[i].to_complex());
    }
    for (auto& [l, t] : acc) {
        SymTensor<Exact> re(l, 3);
        double imag_resid = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            imag_resid = std::max(imag_resid, std::abs(t[i].imag()));
            re[i] = Exact::from_double(t[i].real());
        }
        if (imag_resid > 1e-8 * std::max(1.0, scale))
            throw PreconditionError("sph_to_stf: coefficients do not describe a real function");
        // exact re-detrace restores the traceless invariant lost to rounding
        out.set(l, detrace(re));
    }
    return out;
}

std::complex<double> harmonic_eval(const BasisTensor& b, double theta, double phi) {
    const int l = b.l;
    const auto p = maxwell_eval(l, UnitVec::from_angles(theta, phi));
    const double s = b.scale();
    const double norm = std::sqrt((2 * l + 1) / (4.0 * std::numbers::pi) /
                                  legendre_leading_coefficient(l).to_double());
    std::complex<double> acc = 0.0;
    const auto exps = p.sym().exponent_list();
    for (std::size_t i = 0; i < exps.size(); ++i)
        acc += multiset_multiplicity(exps[i]).convert_to<double>() * p[i] *
               std::conj(s * b.core[i].to_complex());
    return norm * acc;
}

std::complex<double> ylm_eval(int l, int m, double theta, double phi) {
    if (std::abs(m) > l) throw std::invalid_argument("ylm_eval: |m| > l");
    return harmonic_eval(basis_tensor(l, m), theta, phi);
}

} // namespace stf
