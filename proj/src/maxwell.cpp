#include "stf/maxwell.hpp"

#include "stf/errors.hpp"
#include "stf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace stf {

namespace {

double pow_int(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace

Exact legendre_leading_coefficient(int l) {
    return Exact(Rational(binomial(2 * l, l), BigInt(1) << l));
}

void AngularPolynomial::add_term(SymTensor<Exact> coeff) {
    if (coeff.dim() != 3)
        throw std::invalid_argument("AngularPolynomial: coefficient tensors must be 3-dimensional");
    terms_.push_back({coeff.rank(), std::move(coeff)});
}

int AngularPolynomial::max_rank() const {
    int r = -1;
    for (const auto& t : terms_) r = std::max(r, t.rank);
    return r;
}

double AngularPolynomial::eval(const UnitVec& n) const {
    double acc = 0.0;
    for (const auto& t : terms_) {
        const auto exps = t.coeff.exponent_list();
        for (std::size_t i = 0; i < exps.size(); ++i) {
            const auto& e = exps[i];
            double mono = pow_int(n.x, e[0]) * pow_int(n.y, e[1]) * pow_int(n.z, e[2]);
            acc += t.coeff[i].to_double() *
                   multiset_multiplicity(exps[i]).convert_to<double>() * mono;
        }
    }
    return acc;
}

Exact AngularPolynomial::eval_exact(const Rational& x, const Rational& y,
                                    const Rational& z) const {
    return to_poly().eval_exact(x, y, z);
}

Poly3 AngularPolynomial::to_poly() const {
    Poly3 p;
    for (const auto& t : terms_) {
        const auto exps = t.coeff.exponent_list();
        for (std::size_t i = 0; i < exps.size(); ++i) {
            const auto& e = exps[i];
            Exact c = t.coeff[i] * Exact(multiset_multiplicity(e));
            p += Poly3::monomial(e[0], e[1], e[2], c);
        }
    }
    return p;
}

void MultipoleExpansion::set(int l, StfTensor<Exact> t) {
    if (t.rank() != l) throw std::invalid_argument("MultipoleExpansion: rank does not match key");
    if (t.is_zero()) {
        coeffs_.erase(l);
        return;
    }
    coeffs_.insert_or_assign(l, std::move(t));
}

double MultipoleExpansion::reconstruct(const UnitVec& n) const {
    double acc = 0.0;
    for (const auto& [l, c] : coeffs_)
        acc += contract_full(to_double_tensor(c).sym(), maxwell_eval(l, n).sym());
    return acc;
}

Exact MultipoleExpansion::reconstruct_exact(const Rational& x, const Rational& y,
                                            const Rational& z) const {
    Exact acc;
    for (const auto& [l, c] : coeffs_)
        acc += contract_full(c.sym(), maxwell_eval_exact(l, x, y, z).sym());
    return acc;
}

Poly3 MultipoleExpansion::to_poly() const {
    Poly3 p;
    for (const auto& [l, c] : coeffs_) {
        const auto& pt = maxwell_poly_tensor(l);
        const auto exps = c.sym().exponent_list();
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (c[i].is_zero()) continue;
            p += pt[i].scaled(c[i] * Exact(multiset_multiplicity(exps[i])));
        }
    }
    return p;
}

bool MultipoleExpansion::truncate(int l_max) {
    bool cut = false;
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->first > l_max) {
            it = coeffs_.erase(it);
            cut = true;
        } else {
            ++it;
        }
    }
    return cut;
}

const StfTensor<Poly3>& maxwell_poly_tensor(int l) {
    static std::map<int, StfTensor<Poly3>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(l);
    if (it == cache.end()) {
        SymTensor<Poly3> mono(l, 3);
        const auto exps = mono.exponent_list();
        for (std::size_t i = 0; i < exps.size(); ++i)
            mono[i] = Poly3::monomial(exps[i][0], exps[i][1], exps[i][2]);
        auto stf = detrace(mono);
        SymTensor<Poly3> scaled = stf.sym().scaled_exact(legendre_leading_coefficient(l));
        it = cache.emplace(l, StfTensor<Poly3>::from_traceless_unchecked(std::move(scaled))).first;
    }
    return it->second;
}

StfTensor<Exact> maxwell_eval_exact(int l, const Rational& x, const Rational& y,
                                    const Rational& z) {
    // evaluate the cached symbolic tensor through an incremental monomial
    // table; one small-by-large multiply per polynomial term
    const auto& pt = maxwell_poly_tensor(l);
    std::map<Poly3::Monomial, Rational> table;
    table[{0, 0, 0}] = 1;
    for (int d = 1; d <= l; ++d) {
        for (int a = d; a >= 0; --a)
            for (int b = d - a; b >= 0; --b) {
                const int c = d - a - b;
                Poly3::Monomial key{a, b, c};
                if (a > 0) table[key] = table.at({a - 1, b, c}) * x;
                else if (b > 0) table[key] = table.at({a, b - 1, c}) * y;
                else table[key] = table.at({a, b, c - 1}) * z;
            }
    }
    SymTensor<Exact> out(l, 3);
    for (std::size_t i = 0; i < out.size(); ++i) {
        Exact acc;
        for (const auto& [mono, coeff] : pt[i].terms())
            acc += coeff * Exact(table.at(mono));
        out[i] = acc;
    }
    return StfTensor<Exact>::from_traceless_unchecked(std::move(out));
}

StfTensor<double> maxwell_eval(int l, const UnitVec& n) {
    // UnitVec construction already enforces unit length to 1e-9
    auto exact = maxwell_eval_exact(l, Rational(n.x), Rational(n.y), Rational(n.z));
    return to_double_tensor(exact);
}

Exact angular_integral_monomial(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0)
        throw std::invalid_argument("angular_integral_monomial: negative exponent");
    if (a % 2 != 0 || b % 2 != 0 || c % 2 != 0) return Exact(0);
    const int l = a + b + c;
    Rational r(4 * double_factorial(a - 1) * double_factorial(b - 1) * double_factorial(c - 1),
               double_factorial(l + 1));
    return Exact(r, 1);
}

Exact integrate_poly_sphere(const Poly3& p) {
    Exact acc;
    for (const auto& [m, c] : p.terms())
        acc += c * angular_integral_monomial(m[0], m[1], m[2]);
    return acc;
}

Exact integrate_product(const AngularPolynomial& f, const AngularPolynomial& g) {
    return integrate_poly_sphere(f.to_poly() * g.to_poly());
}

Exact& BisymTensor::at(std::size_t i, std::size_t j) {
    return comp[i * static_cast<std::size_t>(multiset_count(rank_second, 3)) + j];
}
const Exact& BisymTensor::at(std::size_t i, std::size_t j) const {
    return comp[i * static_cast<std::size_t>(multiset_count(rank_second, 3)) + j];
}
bool BisymTensor::is_zero() const {
    for (const auto& c : comp)
        if (!c.is_zero()) return false;
    return true;
}

std::vector<std::vector<Exact>> stf_projector_kernel(int l) {
    const auto n = static_cast<std::size_t>(multiset_count(l, 3));
    const auto exps = enumerate_multisets(l, 3);
    std::vector<std::vector<Exact>> k(n, std::vector<Exact>(n));
    for (std::size_t i = 0; i < n; ++i) {
        SymTensor<Exact> chi(l, 3);
        chi.at_exps(exps[i]) = Exact(1);
        auto d = detrace(chi);
        const Exact inv_mult = Exact(1) / Exact(multiset_multiplicity(exps[i]));
        for (std::size_t j = 0; j < n; ++j) k[i][j] = d[j] * inv_mult;
    }
    return k;
}

BisymTensor orthogonality_tensor(int l, int lp) {
    BisymTensor out;
    out.rank_first = l;
    out.rank_second = lp;
    out.comp.assign(static_cast<std::size_t>(multiset_count(l, 3)) *
                        static_cast<std::size_t>(multiset_count(lp, 3)),
                    Exact(0));
    if (l != lp) return out;
    const Exact scale = Exact(Rational(4, 2 * l + 1), 1) * legendre_leading_coefficient(l);
    auto kernel = stf_projector_kernel(l);
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (std::size_t j = 0; j < kernel.size(); ++j)
            out.at(i, j) = kernel[i][j] * scale;
    return out;
}

MultipoleExpansion expand(const AngularPolynomial& f) {
    MultipoleExpansion out;
    const int rmax = f.max_rank();
    for (int l = 0; l <= rmax; ++l) {
        SymTensor<Exact> acc(l, 3);
        bool touched = false;
        for (const auto& term : f.terms()) {
            const int r = term.rank;
            if (r < l || (r - l) % 2 != 0) continue;
            auto d = delta_product<Exact>(l + r);
            auto w = contract_partial(d, term.coeff);
            acc += w.scaled_exact(Exact(2 * l + 1, l + r + 1));
            touched = true;
        }
        if (!touched) continue;
        out.set(l, detrace(acc));
    }
    return out;
}

GeneratingSum generating_partial_sum(const UnitVec& n, const std::array<double, 3>& q, int L) {
    const double q2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    if (q2 >= 1.0) throw ArgumentError("generating_partial_sum: requires |q| < 1");
    if (L < 0) throw ArgumentError("generating_partial_sum: negative order");
    double acc = 0.0;
    for (int l = 0; l <= L; ++l)
        acc += contract_full(maxwell_eval(l, n).sym(), outer_power(q, l));
    const double ndotq = n.x * q[0] + n.y * q[1] + n.z * q[2];
    return {acc, 1.0 / std::sqrt(1.0 - 2.0 * ndotq + q2)};
}

namespace {

SymTensor<double> fix_first_index(const StfTensor<double>& t, int j) {
    SymTensor<double> out(t.rank() - 1, 3);
    for (auto& e : out.exponent_list()) {
        e[j] += 1;
        double v = t.at_exps(e);
        e[j] -= 1;
        out.at_exps(e) = v;
    }
    return out;
}

double max_abs(const SymTensor<double>& t) {
    double m = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) m = std::max(m, std::abs(t[i]));
    return m;
}

} // namespace

RecurrenceResidual recurrence_check(int l, const UnitVec& n) {
    if (l < 1) throw std::invalid_argument("recurrence_check: needs l >= 1");
    const auto pl = maxwell_eval(l, n);
    const auto plp = maxwell_eval(l + 1, n);
    const auto plm = maxwell_eval(l - 1, n);

    double r1 = 0.0;
    for (int j = 0; j < 3; ++j) {
        SymTensor<double> ej(1, 3);
        ej[static_cast<std::size_t>(multiset_rank(std::array{j == 0 ? 1 : 0, j == 1 ? 1 : 0,
                                                             j == 2 ? 1 : 0},
                                                  1))] = 1.0;
        auto lhs = pl.sym().scaled((2 * l + 1) * n[j]);
        auto t2 = fix_first_index(plp, j).scaled(static_cast<double>(l + 1));
        auto t3 = detrace(sym_outer(ej, plm.sym())).sym().scaled(static_cast<double>(2 * l - 1));
        r1 = std::max(r1, max_abs(lhs - t2 - t3));
    }

    SymTensor<double> contracted(l - 1, 3);
    for (auto& e : contracted.exponent_list()) {
        double acc = 0.0;
        for (int a = 0; a < 3; ++a) {
            e[a] += 1;
            acc += n[a] * pl.at_exps(e);
            e[a] -= 1;
        }
        contracted.at_exps(e) = acc;
    }
    const double r2 = max_abs(contracted - plm.sym());
    return {r1, r2};
}

LegendreLink link_to_legendre(int l, const UnitVec& n, const UnitVec& s) {
    LegendreLink out;
    const auto pn = maxwell_eval(l, n);
    out.dot_power_side = contract_full(outer_power({s.x, s.y, s.z}, l), pn.sym());
    out.product_side = contract_full(maxwell_eval(l, s).sym(), pn.sym());
    out.legendre_value = legendre_eval(l, n.dot(s));
    out.leading_coeff = legendre_leading_coefficient(l).to_double();
    return out;
}

StfTensor<std::complex<double>> funk_hecke(int l,
                                           const std::function<std::complex<double>(double)>& f,
                                           const UnitVec& s, const FunkHeckeOptions& opts) {
    auto integrand = [&](double x) { return legendre_eval(l, x) * f(x); };
    const std::complex<double> one_d =
        oracle::integrate_gauss_adaptive(integrand, opts.initial_nodes, opts.tol, opts.max_nodes);
    const std::complex<double> factor = 2.0 * std::numbers::pi * one_d;
    const auto ps = maxwell_eval(l, s);
    SymTensor<std::complex<double>> out(l, 3);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = factor * ps[i];
    return StfTensor<std::complex<double>>::from_traceless_unchecked(std::move(out));
}

StfTensor<double> rotate(int l, const Mat3& r, const StfTensor<double>& t) {
    if (t.rank() != l) throw std::invalid_argument("rotate: rank mismatch");
    double ortho = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double dot = 0.0;
            for (int k = 0; k < 3; ++k) dot += r[k][i] * r[k][j];
            ortho = std::max(ortho, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    if (ortho > 1e-10) throw ArgumentError("rotate: matrix is not orthogonal");

    SymTensor<double> out(l, 3);
    const auto out_exps = out.exponent_list();
    for (std::size_t oi = 0; oi < out_exps.size(); ++oi) {
        // representative index tuple for this multiset
        std::vector<int> ti;
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < out_exps[oi][a]; ++c) ti.push_back(a);

        double acc = 0.0;
        std::vector<int> tj(l, 0);
        while (true) {
            double prod = 1.0;
            for (int k = 0; k < l; ++k) prod *= r[ti[k]][tj[k]];
            if (prod != 0.0) {
                auto e = exponents_of_indices(tj, 3);
                acc += prod * t.at_exps(e);
            }
            int pos = l - 1;
            while (pos >= 0 && tj[pos] == 2) tj[pos--] = 0;
            if (pos < 0) break;
            ++tj[pos];
        }
        out[oi] = acc;
    }
    return StfTensor<double>::from_traceless_unchecked(std::move(out));
}

namespace {

// panel-resolved integral of the zonal factor g(u)/u, with
// g(u) = integral over [-1,1] of P_2(x) e^{iux} dx
std::complex<double> quadrupole_zonal_factor(double u) {
    int n = 32;
    const int needed = static_cast<int>(u / 2.0) + 30;
    while (n < needed) n *= 2;
    const auto& rule = oracle::gauss_legendre_rule(n);
    double re = 0.0, im = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rule.nodes[i];
        const double p2 = 0.5 * (3.0 * x * x - 1.0);
        const double arg = u * x;
        re += rule.weights[i] * p2 * std::cos(arg);
        im += rule.weights[i] * p2 * std::sin(arg);
    }
    return {re, im};
}

std::complex<double> quadrupole_radial_integral(double umin, double umax) {
    auto integrand = [](double u) { return quadrupole_zonal_factor(u) / u; };
    auto panel = [&](double a, double b, int nodes) {
        const auto& rule = oracle::gauss_legendre_rule(nodes);
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        std::complex<double> acc = 0.0;
        for (int i = 0; i < nodes; ++i)
            acc += rule.weights[i] * integrand(mid + half * rule.nodes[i]);
        return half * acc;
    };
    std::complex<double> acc = 0.0;
    const double split = std::min(umax, 8.0);
    if (umin < split) acc += panel(umin, split, 64);
    double u0 = split;
    const double step = 2.0 * std::numbers::pi;
    while (u0 < umax) {
        const double u1 = std::min(u0 + step, umax);
        acc += panel(u0, u1, 12);
        u0 = u1;
    }
    return acc;
}

} // namespace

QuadrupoleResult quadrupole_fourier_demo(const SymTensor<double>& q,
                                         const std::array<double, 3>& k, double rmin,
                                         double rmax) {
    if (q.rank() != 2 || q.dim() != 3)
        throw std::invalid_argument("quadrupole_fourier_demo: Q must be a rank-2 3d tensor");
    const double qscale = std::max(1.0, max_abs(q));
    const double tr = q.at_exps({2, 0, 0}) + q.at_exps({0, 2, 0}) + q.at_exps({0, 0, 2});
    if (std::abs(tr) > 1e-12 * qscale)
        throw PreconditionError("quadrupole_fourier_demo: Q must be traceless");
    const double kk = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    if (kk == 0.0) throw ArgumentError("quadrupole_fourier_demo: k must be nonzero");
    if (!(rmin > 0.0) || !(rmax > rmin))
        throw ArgumentError("quadrupole_fourier_demo: need 0 < rmin < rmax");

    const UnitVec s(k[0] / kk, k[1] / kk, k[2] / kk);
    const double q_dot_p2 = contract_full(q, maxwell_eval(2, s).sym());
    const double prefactor = (2.0 / 3.0) * 2.0 * std::numbers::pi * q_dot_p2;

    QuadrupoleResult out;
    double sqs = 0.0;
    {
        std::array<double, 3> sv{s.x, s.y, s.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                std::array<int, 3> e{0, 0, 0};
                e[i] += 1;
                e[j] += 1;
                sqs += sv[i] * sv[j] * q.at_exps(e);
            }
    }
    out.closed_form = -(4.0 * std::numbers::pi / 3.0) * sqs;

    // widen the window toward the requested cutoffs to show convergence
    for (int stage = 2; stage >= 0; --stage) {
        const double f = pow_int(10.0, stage);
        const double lo = rmin * f, hi = rmax / f;
        if (!(lo < hi)) continue;
        std::complex<double> radial = quadrupole_radial_integral(kk * lo, kk * hi);
        out.refinements.push_back({lo, hi, prefactor * radial.real()});
    }
    out.numeric = out.refinements.back().value;
    const double denom = std::max(std::abs(out.closed_form), 1e-30);
    out.rel_error = std::abs(out.numeric - out.closed_form) / denom;
    return out;
}

SymTensor<double> outer_power(const std::array<double, 3>& v, int l) {
    SymTensor<double> out(l, 3);
    const auto exps = out.exponent_list();
    for (std::size_t i = 0; i < exps.size(); ++i)
        out[i] = pow_int(v[0], exps[i][0]) * pow_int(v[1], exps[i][1]) * pow_int(v[2], exps[i][2]);
    return out;
}

SymTensor<Exact> outer_power_exact(const Rational& x, const Rational& y, const Rational& z,
                                   int l) {
    SymTensor<Exact> out(l, 3);
    const auto exps = out.exponent_list();
    for (std::size_t i = 0; i < exps.size(); ++i) {
        Rational r = 1;
        for (int c = 0; c < exps[i][0]; ++c) r *= x;
        for (int c = 0; c < exps[i][1]; ++c) r *= y;
        for (int c = 0; c < exps[i][2]; ++c) r *= z;
        out[i] = Exact(r);
    }
    return out;
}

SymTensor<double> to_double_tensor(const SymTensor<Exact>& t) {
    SymTensor<double> out(t.rank(), t.dim());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i].to_double();
    return out;
}

StfTensor<double> to_double_tensor(const StfTensor<Exact>& t) {
    return StfTensor<double>::from_traceless_unchecked(to_double_tensor(t.sym()));
}

} // namespace stf
