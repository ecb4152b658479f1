#include "stf/verify.hpp"

#include "stf/errors.hpp"
#include "stf/harmonics.hpp"
#include "stf/maxwell.hpp"
#include "stf/oracle.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace stf {
namespace verify {

namespace {

UnitVec random_unit(std::mt19937& rng) {
    std::normal_distribution<double> g;
    double x, y, z, n2;
    do {
        x = g(rng);
        y = g(rng);
        z = g(rng);
        n2 = x * x + y * y + z * z;
    } while (n2 < 1e-6);
    const double inv = 1.0 / std::sqrt(n2);
    return UnitVec(x * inv, y * inv, z * inv);
}

std::string pair_label(int l, int lp) {
    std::ostringstream os;
    os << "l=" << l << ",l'=" << lp;
    return os.str();
}

} // namespace

Report run_orthogonality(int lmax, double tol) {
    Report rep;
    rep.suite = "orthogonality";
    const int nt = lmax + 4;
    const int np = 2 * lmax + 5;
    oracle::SphereQuadrature quad(nt, np);

    // tensor harmonics at every node, per order
    std::vector<std::vector<StfTensor<double>>> values(static_cast<std::size_t>(lmax) + 1);
    for (int l = 0; l <= lmax; ++l) {
        values[l].reserve(quad.nodes().size());
        for (const auto& nd : quad.nodes()) values[l].push_back(maxwell_eval(l, nd.dir));
    }

    for (int l = 0; l <= lmax; ++l) {
        for (int lp = l; lp <= lmax; ++lp) {
            const auto target = orthogonality_tensor(l, lp);
            const std::size_t ni = values[l].front().size();
            const std::size_t nj = values[lp].front().size();
            double resid = 0.0;
            for (std::size_t i = 0; i < ni; ++i) {
                for (std::size_t j = 0; j < nj; ++j) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < quad.nodes().size(); ++k)
                        acc += quad.nodes()[k].weight * values[l][k][i] * values[lp][k][j];
                    resid = std::max(resid, std::abs(acc - target.at(i, j).to_double()));
                }
            }
            rep.add({pair_label(l, lp), resid, resid <= tol, ""});
        }
    }
    return rep;
}

Report run_recurrence(int lmax, double tol) {
    Report rep;
    rep.suite = "recurrence";
    std::mt19937 rng(271828);
    for (int l = 1; l <= lmax; ++l) {
        double worst_three = 0.0, worst_contraction = 0.0;
        for (int t = 0; t < 20; ++t) {
            const auto r = recurrence_check(l, random_unit(rng));
            worst_three = std::max(worst_three, r.three_term);
            worst_contraction = std::max(worst_contraction, r.contraction);
        }
        std::ostringstream lbl;
        lbl << "l=" << l;
        rep.add({lbl.str() + " three-term", worst_three, worst_three <= tol, ""});
        rep.add({lbl.str() + " contraction", worst_contraction, worst_contraction <= tol, ""});
    }
    return rep;
}

Report run_laplacian(int lmax) {
    Report rep;
    rep.suite = "laplacian";
    const double h = 0.02;
    const std::vector<std::pair<double, double>> points = {
        {1.1, 0.7}, {2.0, 2.4}, {1.7, 4.9}};
    for (int l = 0; l <= lmax; ++l) {
        auto rms_error = [&](double step) {
            double acc = 0.0;
            int count = 0;
            for (auto [theta, phi] : points) {
                const auto center = maxwell_eval(l, UnitVec::from_angles(theta, phi));
                for (std::size_t i = 0; i < center.size(); ++i) {
                    auto comp = [&](double t, double p) {
                        return maxwell_eval(l, UnitVec::from_angles(t, p))[i];
                    };
                    const double fd = oracle::fd_angular_laplacian(comp, theta, phi, step);
                    const double target = -static_cast<double>(l) * (l + 1) * center[i];
                    acc += (fd - target) * (fd - target);
                    ++count;
                }
            }
            return std::sqrt(acc / count);
        };
        const double e1 = rms_error(h);
        const double e2 = rms_error(h / 2);
        std::ostringstream lbl;
        lbl << "l=" << l;
        if (l == 0) {
            // constant component: the difference stencil is exactly zero
            rep.add({lbl.str() + " residual", e1, e1 <= 1e-12, "eigenvalue 0"});
            continue;
        }
        const double ratio = e1 / e2;
        std::ostringstream note;
        note << "error ratio " << ratio;
        rep.add({lbl.str() + " convergence", std::abs(ratio - 4.0),
                 ratio >= 3.5 && ratio <= 4.5, note.str()});
    }
    return rep;
}

Report run_moment_identity(int lmax) {
    Report rep;
    rep.suite = "eq19";
    for (int l = 0; l <= lmax; ++l) {
        bool ok = true;
        for (int a = 0; a <= l; ++a) {
            for (int b = 0; a + b <= l; ++b) {
                const int c = l - a - b;
                const Exact direct = angular_integral_monomial(a, b, c);
                if (a % 2 != 0 || b % 2 != 0 || c % 2 != 0) {
                    ok = ok && direct.is_zero();
                    continue;
                }
                const int m = a / 2, n = (a + b) / 2, M = l / 2;
                auto [phi_part, theta_part] = oracle::gamma_integrals(m, n, M);
                ok = ok && (phi_part * theta_part == direct);
            }
        }
        std::ostringstream lbl;
        lbl << "l=" << l;
        rep.add({lbl.str(), ok ? 0.0 : 1.0, ok, ok ? "exact" : "mismatch"});
    }
    return rep;
}

Report run_basis(int lmax, double tol) {
    Report rep;
    rep.suite = "basis";
    for (int l = 0; l <= lmax; ++l) {
        // Gram identity, exact
        double gram_resid = 0.0;
        for (int m = -l; m <= l; ++m) {
            for (int mp = -l; mp <= l; ++mp) {
                const auto& a = basis_tensor(l, m);
                const auto& b = basis_tensor(l, mp);
                CExact dot = conj_contract(a.core, b.core);
                if (m == mp) {
                    Exact diag = a.norm_sq * Exact(dot.re) - Exact(1);
                    gram_resid = std::max(gram_resid, std::abs(diag.to_double()));
                    gram_resid = std::max(gram_resid, std::abs(dot.im.convert_to<double>()));
                } else {
                    gram_resid = std::max(gram_resid, std::abs(dot.to_complex()) *
                                                          a.scale() * b.scale());
                }
            }
        }

        // completeness against the projection kernel, exact
        const auto kernel = stf_projector_kernel(l);
        const std::size_t nc = kernel.size();
        double comp_resid = 0.0;
        for (std::size_t i = 0; i < nc; ++i) {
            for (std::size_t j = 0; j < nc; ++j) {
                CExact acc;
                for (int m = -l; m <= l; ++m) {
                    const auto& b = basis_tensor(l, m);
                    acc += b.core[i].conj() * b.core[j] * from_exact<CExact>(b.norm_sq);
                }
                CExact diff = acc - from_exact<CExact>(kernel[i][j]);
                comp_resid = std::max(comp_resid, std::abs(diff.to_complex()));
            }
        }

        // conjugation symmetry, exact
        bool conj_ok = true;
        for (int m = -l; m <= l; ++m) {
            const auto& a = basis_tensor(l, m);
            const auto& b = basis_tensor(l, -m);
            if (a.norm_sq != b.norm_sq) conj_ok = false;
            for (std::size_t i = 0; i < a.core.size(); ++i) {
                CExact expect = (m % 2 == 0) ? b.core[i] : -b.core[i];
                if (a.core[i].conj() != expect) conj_ok = false;
            }
        }

        // agreement with the reference implementation (same phase)
        double ref_resid = 0.0;
        for (int m = -l; m <= l; ++m) {
            for (double theta : {0.4, 1.3, 2.2}) {
                for (double phi : {0.3, 2.9, 4.4}) {
                    const auto a = ylm_eval(l, m, theta, phi);
                    const auto b = oracle::reference_ylm(l, m, theta, phi);
                    ref_resid = std::max(ref_resid, std::abs(a - b));
                }
            }
        }

        std::ostringstream lbl;
        lbl << "l=" << l;
        rep.add({lbl.str() + " gram", gram_resid, gram_resid <= tol, "exact check"});
        rep.add({lbl.str() + " completeness", comp_resid, comp_resid <= tol, "exact check"});
        rep.add({lbl.str() + " conjugation", conj_ok ? 0.0 : 1.0, conj_ok, "exact check"});
        rep.add({lbl.str() + " vs reference", ref_resid, ref_resid <= tol, ""});
    }
    return rep;
}

Report run_suite(const std::string& name, int lmax, double tol) {
    if (name == "orthogonality") return run_orthogonality(lmax, tol);
    if (name == "recurrence") return run_recurrence(lmax, tol);
    if (name == "laplacian") return run_laplacian(lmax);
    if (name == "eq19") return run_moment_identity(lmax);
    if (name == "basis") return run_basis(lmax, tol);
    throw ParseError("unknown verification suite '" + name + "'");
}

} // namespace verify
} // namespace stf
