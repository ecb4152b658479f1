#include "doctest.h"

#include "stf/errors.hpp"
#include "stf/maxwell.hpp"
#include "stf/oracle.hpp"

#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace stf;
using stf_test::random_rotation;
using stf_test::random_tensor;
using stf_test::random_unit;

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

SymTensor<Poly3> poly_monomials(int l) {
    SymTensor<Poly3> t(l, 3);
    const auto exps = t.exponent_list();
    for (std::size_t i = 0; i < exps.size(); ++i)
        t[i] = Poly3::monomial(exps[i][0], exps[i][1], exps[i][2]);
    return t;
}

bool equal_on_sphere(const SymTensor<Poly3>& a, const SymTensor<Poly3>& b) {
    if (a.rank() != b.rank()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].equals_on_sphere(b[i])) return false;
    return true;
}

} // namespace

TEST_CASE("tensor harmonics match the classical closed forms") {
    // l = 0: constant 1
    CHECK(maxwell_poly_tensor(0)[0] == Poly3(1));

    // l = 1: the direction itself
    CHECK(equal_on_sphere(maxwell_poly_tensor(1).sym(), poly_monomials(1)));

    // l = 2: (3 n_i n_j - delta_ij)/2
    {
        SymTensor<Poly3> lit = poly_monomials(2).scaled_exact(Exact(3, 2));
        lit -= delta_product<Poly3>(2).scaled_exact(Exact(1, 2));
        CHECK(equal_on_sphere(maxwell_poly_tensor(2).sym(), lit));
    }

    // l = 3: (5 n_i n_j n_k - 3 n_(i delta_jk))/2
    {
        SymTensor<Poly3> lit = poly_monomials(3).scaled_exact(Exact(5, 2));
        lit -= sym_outer(poly_monomials(1), delta_product<Poly3>(2)).scaled_exact(Exact(3, 2));
        CHECK(equal_on_sphere(maxwell_poly_tensor(3).sym(), lit));
    }

    // l = 4: (35 n^4 - 30 n_(i n_j delta_kl) + 3 delta_(ij delta_kl))/8
    {
        SymTensor<Poly3> lit = poly_monomials(4).scaled_exact(Exact(35, 8));
        lit -= sym_outer(poly_monomials(2), delta_product<Poly3>(2)).scaled_exact(Exact(30, 8));
        lit += delta_product<Poly3>(4).scaled_exact(Exact(3, 8));
        CHECK(equal_on_sphere(maxwell_poly_tensor(4).sym(), lit));
    }
}

TEST_CASE("tensor harmonics are traceless as polynomials") {
    for (int l = 2; l <= 8; ++l) {
        auto tr = trace(maxwell_poly_tensor(l).sym());
        CHECK(tr.is_zero());
    }
}

TEST_CASE("pointwise evaluation") {
    const UnitVec pole(0.0, 0.0, 1.0);
    CHECK(maxwell_eval(0, pole)[0] == 1.0);

    auto p1 = maxwell_eval(1, pole);
    CHECK(p1.at_exps({1, 0, 0}) == 0.0);
    CHECK(p1.at_exps({0, 0, 1}) == 1.0);

    auto p2 = maxwell_eval(2, pole);
    CHECK(p2.at_exps({2, 0, 0}) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(p2.at_exps({0, 2, 0}) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(p2.at_exps({0, 0, 2}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p2.at_exps({1, 1, 0}) == 0.0);

    CHECK_THROWS_AS(UnitVec(1.0, 1.0, 1.0), std::invalid_argument);

    // exact components at a rational point of the sphere, against the
    // symbolic polynomial route
    const Rational x(3, 5), y(4, 5), z(0);
    for (int l = 0; l <= 5; ++l) {
        auto ev = maxwell_eval_exact(l, x, y, z);
        const auto& pt = maxwell_poly_tensor(l);
        for (std::size_t i = 0; i < ev.size(); ++i)
            CHECK(ev[i] == pt[i].eval_exact(x, y, z));
    }
}

TEST_CASE("monomial moments") {
    CHECK(angular_integral_monomial(0, 0, 0) == Exact(Rational(4), 1));
    CHECK(angular_integral_monomial(2, 0, 0) == Exact(Rational(4, 3), 1));
    CHECK(angular_integral_monomial(2, 2, 0) == Exact(Rational(4, 15), 1));
    CHECK(angular_integral_monomial(4, 0, 0) == Exact(Rational(4, 5), 1));
    CHECK(angular_integral_monomial(1, 2, 0).is_zero());

    // the delta-product linkage: moment = 4 pi/(l+1) * component
    for (int l : {2, 4, 6, 8, 10}) {
        auto d = delta_product<Exact>(l);
        const auto exps = d.exponent_list();
        for (std::size_t i = 0; i < exps.size(); ++i) {
            const auto& e = exps[i];
            CHECK(angular_integral_monomial(e[0], e[1], e[2]) ==
                  Exact(Rational(4, l + 1), 1) * d[i]);
        }
    }
}

TEST_CASE("product integrals") {
    AngularPolynomial nz;
    {
        SymTensor<Exact> t(1, 3);
        t.at_exps({0, 0, 1}) = Exact(1);
        nz.add_term(t);
    }
    CHECK(integrate_product(nz, nz) == Exact(Rational(4, 3), 1));

    // mixed-order components integrate to zero
    const auto& p1 = maxwell_poly_tensor(1);
    const auto& p2 = maxwell_poly_tensor(2);
    CHECK(integrate_poly_sphere(p1.at_exps({1, 0, 0}) * p2.at_exps({0, 2, 0})).is_zero());

    // full self-contraction of the rank-2 harmonic integrates to 6 pi
    Poly3 contraction;
    const auto exps = p2.sym().exponent_list();
    for (std::size_t i = 0; i < exps.size(); ++i)
        contraction += p2[i] * p2[i] * from_exact<Poly3>(Exact(multiset_multiplicity(exps[i])));
    CHECK(integrate_poly_sphere(contraction) == Exact(Rational(6), 1));
}

TEST_CASE("orthogonality tensor") {
    CHECK(orthogonality_tensor(1, 2).is_zero());
    CHECK(orthogonality_tensor(0, 0).at(0, 0) == Exact(Rational(4), 1));

    auto o11 = orthogonality_tensor(1, 1);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) CHECK(o11.at(i, j) == Exact(Rational(4, 3), 1));
            else CHECK(o11.at(i, j).is_zero());
        }

    // exact cross-check against symbolic component products for l <= 4
    for (int l = 0; l <= 4; ++l) {
        const auto& pt = maxwell_poly_tensor(l);
        auto target = orthogonality_tensor(l, l);
        for (std::size_t i = 0; i < pt.size(); ++i)
            for (std::size_t j = 0; j < pt.size(); ++j)
                CHECK(integrate_poly_sphere(pt[i] * pt[j]) == target.at(i, j));
    }

    // mixed orders vanish exactly in the symbolic route as well
    const auto& p1 = maxwell_poly_tensor(1);
    const auto& p3 = maxwell_poly_tensor(3);
    for (std::size_t i = 0; i < p1.size(); ++i)
        for (std::size_t j = 0; j < p3.size(); ++j)
            CHECK(integrate_poly_sphere(p1[i] * p3[j]).is_zero());
}

TEST_CASE("harmonics are orthogonal to all lower-degree monomials") {
    for (int l = 1; l <= 6; ++l) {
        const auto& pt = maxwell_poly_tensor(l);
        for (int lp = 0; lp < l; ++lp) {
            for (const auto& e : enumerate_multisets(lp, 3)) {
                const Poly3 mono = Poly3::monomial(e[0], e[1], e[2]);
                for (std::size_t i = 0; i < pt.size(); ++i)
                    CHECK(integrate_poly_sphere(pt[i] * mono).is_zero());
            }
        }
    }
}

TEST_CASE("expansion of a quadrupole form") {
    // f(n) = n.Q.n with traceless symmetric Q
    std::mt19937 rng(53);
    auto q = detrace(random_tensor(2, rng)).sym();
    AngularPolynomial f;
    f.add_term(q);
    auto e = expand(f);
    CHECK(e.coefficients().size() == 1);
    REQUIRE(e.coefficients().count(2) == 1);
    CHECK(e.coefficients().at(2).sym() == q.scaled_exact(Exact(2, 3)));
    CHECK(e.coefficients().count(0) == 0); // trace part absent
}

TEST_CASE("expansion basics") {
    AngularPolynomial one;
    {
        SymTensor<Exact> t(0, 3);
        t[0] = Exact(1);
        one.add_term(t);
    }
    auto e = expand(one);
    CHECK(e.coefficients().size() == 1);
    CHECK(e.coefficients().at(0)[0] == Exact(1));

    // f = n_x^2 splits into 1/3 monopole plus 2/3 of the detraced dyad
    AngularPolynomial nx2;
    {
        SymTensor<Exact> t(2, 3);
        t.at_exps({2, 0, 0}) = Exact(1);
        nx2.add_term(t);
    }
    auto e2 = expand(nx2);
    CHECK(e2.coefficients().at(0)[0] == Exact(1, 3));
    SymTensor<Exact> exx(2, 3);
    exx.at_exps({2, 0, 0}) = Exact(1);
    CHECK(e2.coefficients().at(2).sym() == detrace(exx).sym().scaled_exact(Exact(2, 3)));
}

TEST_CASE("expansion-reconstruction identity") {
    std::mt19937 rng(59);

    // symbolic identity: reconstruct(expand(f)) == f as sphere functions
    for (int trial = 0; trial < 6; ++trial) {
        AngularPolynomial f;
        std::uniform_int_distribution<int> nterms(1, 3), rk(0, 6);
        for (int t = nterms(rng); t > 0; --t) f.add_term(random_tensor(rk(rng), rng));
        auto e = expand(f);
        CHECK(e.max_order() <= f.max_rank());
        CHECK(e.to_poly().equals_on_sphere(f.to_poly()));

        // exact evaluation at rational points of the sphere
        const Rational pts[][3] = {{Rational(3, 5), Rational(4, 5), Rational(0)},
                                   {Rational(1, 3), Rational(2, 3), Rational(2, 3)},
                                   {Rational(2, 7), Rational(3, 7), Rational(6, 7)},
                                   {Rational(0), Rational(0), Rational(1)}};
        for (const auto& p : pts)
            CHECK(e.reconstruct_exact(p[0], p[1], p[2]) == f.eval_exact(p[0], p[1], p[2]));

        // float agreement at random directions
        for (int i = 0; i < 25; ++i) {
            const UnitVec n = random_unit(rng);
            CHECK(std::abs(e.reconstruct(n) - f.eval(n)) < 1e-12);
        }
    }

    AngularPolynomial nz2;
    {
        SymTensor<Exact> t(2, 3);
        t.at_exps({0, 0, 2}) = Exact(1);
        nz2.add_term(t);
    }
    CHECK(expand(nz2).reconstruct(UnitVec(0, 0, 1)) == doctest::Approx(1.0).epsilon(1e-14));

    MultipoleExpansion constant;
    SymTensor<Exact> t0(0, 3);
    t0[0] = Exact(1);
    constant.set(0, detrace(t0));
    CHECK(constant.reconstruct(UnitVec(0.6, 0.8, 0.0)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("parity selection in expansions") {
    std::mt19937 rng(61);
    AngularPolynomial f;
    f.add_term(random_tensor(3, rng)); // odd ranks only
    f.add_term(random_tensor(1, rng));
    auto e = expand(f);
    for (const auto& [l, c] : e.coefficients()) CHECK(l % 2 == 1);
}

TEST_CASE("generating function partial sums") {
    // along the axis the sum is geometric; the tail at L terms is 2 * 0.5^{L+1}
    auto g = generating_partial_sum(UnitVec(0, 0, 1), {0.0, 0.0, 0.5}, 24);
    CHECK(g.closed_form == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g.partial_sum == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(g.partial_sum - 2.0) > 1e-9); // genuinely a partial sum

    auto gz = generating_partial_sum(UnitVec(0, 0, 1), {0.0, 0.0, 0.0}, 0);
    CHECK(gz.partial_sum == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gz.closed_form == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937 rng(67);
    for (int trial = 0; trial < 5; ++trial) {
        const UnitVec n = random_unit(rng);
        const UnitVec qdir = random_unit(rng);
        const std::array<double, 3> q{0.3 * qdir.x, 0.3 * qdir.y, 0.3 * qdir.z};
        auto r = generating_partial_sum(n, q, 20);
        CHECK(std::abs(r.partial_sum - r.closed_form) < 1e-9);

        // tail bound |q|^{L+1} / (1 - |q|)
        for (int L : {0, 2, 5, 10}) {
            auto p = generating_partial_sum(n, q, L);
            const double bound = std::pow(0.3, L + 1) / (1.0 - 0.3);
            CHECK(std::abs(p.partial_sum - p.closed_form) <= bound + 1e-14);
        }
    }
    CHECK_THROWS_AS(generating_partial_sum(UnitVec(0, 0, 1), {1.0, 0.0, 0.0}, 3), ArgumentError);
}

TEST_CASE("recurrences") {
    std::mt19937 rng(71);
    for (int l = 1; l <= 8; ++l) {
        for (int trial = 0; trial < 5; ++trial) {
            auto r = recurrence_check(l, random_unit(rng));
            CHECK(r.three_term < 1e-12);
            CHECK(r.contraction < 1e-12);
        }
    }
    // the contraction recurrence at the pole lands on the lower harmonic
    auto r = recurrence_check(2, UnitVec(0, 0, 1));
    CHECK(r.contraction < 1e-15);
    CHECK_THROWS_AS(recurrence_check(0, UnitVec(0, 0, 1)), std::invalid_argument);
}

TEST_CASE("link to the 1d polynomials") {
    std::mt19937 rng(73);
    for (int l = 0; l <= 8; ++l) {
        const UnitVec n = random_unit(rng);
        auto same = link_to_legendre(l, n, n);
        CHECK(same.dot_power_side == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(same.product_side == doctest::Approx(same.leading_coeff).epsilon(1e-12));
    }

    // perpendicular directions at l = 2: P_2(0) = -1/2
    auto perp = link_to_legendre(2, UnitVec(0, 0, 1), UnitVec(1, 0, 0));
    CHECK(perp.dot_power_side == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(perp.product_side == doctest::Approx(-0.75).epsilon(1e-14));

    for (int l = 0; l <= 8; ++l) {
        for (int trial = 0; trial < 10; ++trial) {
            auto v = link_to_legendre(l, random_unit(rng), random_unit(rng));
            CHECK(std::abs(v.dot_power_side - v.legendre_value) < 1e-12);
            CHECK(std::abs(v.product_side - v.leading_coeff * v.legendre_value) < 1e-12);
        }
    }
}

TEST_CASE("zonal integrals") {
    // constant weight at l = 0 gives the sphere area
    auto s0 = funk_hecke(0, [](double) { return std::complex<double>(1.0, 0.0); },
                         UnitVec(0, 0, 1));
    CHECK(s0[0].real() == doctest::Approx(kFourPi).epsilon(1e-13));

    // f(x) = x at l = 1 gives (4 pi / 3) s
    const UnitVec s(0.48, -0.6, 0.64);
    auto s1 = funk_hecke(1, [](double x) { return std::complex<double>(x, 0.0); }, s);
    CHECK(s1.at_exps({1, 0, 0}).real() == doctest::Approx(kFourPi / 3.0 * s.x).epsilon(1e-13));
    CHECK(s1.at_exps({0, 1, 0}).real() == doctest::Approx(kFourPi / 3.0 * s.y).epsilon(1e-13));
    CHECK(s1.at_exps({0, 0, 1}).real() == doctest::Approx(kFourPi / 3.0 * s.z).epsilon(1e-13));

    // oscillatory zonal weight against the two-dimensional quadrature oracle
    const double kr = 2.7;
    auto zonal = funk_hecke(2, [kr](double x) {
        return std::exp(std::complex<double>(0.0, kr * x));
    }, s);
    const auto exps = zonal.sym().exponent_list();
    for (std::size_t i = 0; i < exps.size(); ++i) {
        const auto& e = exps[i];
        const auto direct = oracle::integrate_sphere(
            [&](const UnitVec& n) {
                return maxwell_eval(2, n).at_exps(e) *
                       std::exp(std::complex<double>(0.0, kr * n.dot(s)));
            },
            40);
        CHECK(std::abs(zonal[i] - direct) < 1e-8);
    }

    // a discontinuous weight with a tiny node budget must be flagged
    FunkHeckeOptions tight;
    tight.initial_nodes = 8;
    tight.max_nodes = 64;
    tight.tol = 1e-14;
    CHECK_THROWS_AS(funk_hecke(2, [](double x) {
        return std::complex<double>(x > 0.3 ? 1.0 : 0.0, 0.0);
    }, s, tight), oracle::QuadratureError);
}

TEST_CASE("rotation covariance") {
    std::mt19937 rng(79);
    const Mat3 identity{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    auto t = maxwell_eval(3, random_unit(rng));
    auto r = rotate(3, identity, t);
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(r[i] == doctest::Approx(t[i]).epsilon(1e-15));

    // quarter turn about z maps x to y
    const Mat3 quarter{{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}};
    auto ex = maxwell_eval(1, UnitVec(1, 0, 0));
    auto rex = rotate(1, quarter, ex);
    CHECK(rex.at_exps({1, 0, 0}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rex.at_exps({0, 1, 0}) == doctest::Approx(1.0).epsilon(1e-15));

    for (int l : {1, 2, 3, 5}) {
        for (int trial = 0; trial < 5; ++trial) {
            const Mat3 rot = random_rotation(rng);
            const UnitVec n = random_unit(rng);
            const UnitVec rn(rot[0][0] * n.x + rot[0][1] * n.y + rot[0][2] * n.z,
                             rot[1][0] * n.x + rot[1][1] * n.y + rot[1][2] * n.z,
                             rot[2][0] * n.x + rot[2][1] * n.y + rot[2][2] * n.z);
            auto lhs = maxwell_eval(l, rn);
            auto rhs = rotate(l, rot, maxwell_eval(l, n));
            for (std::size_t i = 0; i < lhs.size(); ++i)
                CHECK(std::abs(lhs[i] - rhs[i]) < 1e-11);
        }
    }

    Mat3 skew{{{1, 0.5, 0}, {0, 1, 0}, {0, 0, 1}}};
    CHECK_THROWS_AS(rotate(1, skew, maxwell_eval(1, UnitVec(1, 0, 0))), ArgumentError);
}

TEST_CASE("quadrupole fourier transform demo") {
    SymTensor<double> q(2, 3);
    q.at_exps({2, 0, 0}) = 1.0;
    q.at_exps({0, 2, 0}) = 1.0;
    q.at_exps({0, 0, 2}) = -2.0;
    auto r = quadrupole_fourier_demo(q, {0.0, 0.0, 1.0});
    CHECK(r.closed_form == doctest::Approx(8.0 * std::numbers::pi / 3.0).epsilon(1e-15));
    CHECK(r.rel_error < 1e-3);
    // widening windows approach the closed form
    REQUIRE(r.refinements.size() == 3);
    CHECK(std::abs(r.refinements[2].value - r.closed_form) <=
          std::abs(r.refinements[0].value - r.closed_form) + 1e-9);

    // a null direction: k.Q.k = 0
    SymTensor<double> q2(2, 3);
    q2.at_exps({2, 0, 0}) = 1.0;
    q2.at_exps({0, 2, 0}) = -1.0;
    auto r2 = quadrupole_fourier_demo(q2, {0.0, 0.0, 1.0});
    CHECK(r2.closed_form == 0.0);
    CHECK(std::abs(r2.numeric) < 1e-9);

    // traced input is rejected
    SymTensor<double> bad(2, 3);
    bad.at_exps({2, 0, 0}) = 1.0;
    CHECK_THROWS_AS(quadrupole_fourier_demo(bad, {0.0, 0.0, 1.0}), PreconditionError);
    CHECK_THROWS_AS(quadrupole_fourier_demo(q, {0.0, 0.0, 0.0}), ArgumentError);
}
