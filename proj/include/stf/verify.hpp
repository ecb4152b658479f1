#pragma once

#include <string>
#include <vector>

namespace stf {
namespace verify {

struct Row {
    std::string label;
    double residual = 0.0;
    bool pass = false;
    std::string note;
};

struct Report {
    std::string suite;
    std::vector<Row> rows;
    bool pass = true;

    void add(Row r) {
        pass = pass && r.pass;
        rows.push_back(std::move(r));
    }
};

/// Componentwise sphere-quadrature of harmonic pair products against the
/// analytic orthogonality tensor, all order pairs up to lmax.
Report run_orthogonality(int lmax, double tol);

/// Three-term and contraction recurrences at random directions.
Report run_recurrence(int lmax, double tol);

/// Finite-difference angular Laplacian eigenvalue check with h-halving
/// convergence ratios.
Report run_laplacian(int lmax);

/// Exact equality of the closed-form monomial moments with the
/// Gamma-function route, all exponent triples up to total degree lmax.
Report run_moment_identity(int lmax);

/// Basis-tensor family: Gram identity, completeness against the
/// projection kernel, conjugation symmetry, and agreement with the
/// reference spherical harmonics.
Report run_basis(int lmax, double tol);

/// Dispatch by CLI suite name (orthogonality|recurrence|laplacian|eq19|basis);
/// throws ParseError for unknown names.
Report run_suite(const std::string& name, int lmax, double tol);

} // namespace verify
} // namespace stf
