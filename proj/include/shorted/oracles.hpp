#pragma once

// Reference computations for the verification suites. Each one avoids the
// code path it is used to check: no SVD, no pseudo-inverse, no LDL*.

#include "shorted/core.hpp"

namespace shorted::oracle {

/// Smallest eigenvalue of a Hermitian matrix through the general complex
/// Schur decomposition (not the Hermitian eigensolver).
double min_eigenvalue(const MatC& h);

/// Largest |eigenvalue| of a Hermitian matrix, same route.
double spectral_radius(const MatC& h);

/// PSD test with slack: min eigenvalue >= -rel * max(spectral radius, 1 if zero).
bool psd_by_eigenvalues(const MatC& h, double rel = 1e-8);

/// Coefficients c_0..c_n of det(tI - H) by Faddeev-LeVerrier, exact.
std::vector<Rational> characteristic_polynomial(const MatQ& h);

/// A Hermitian matrix is PSD iff (-1)^k c_k >= 0 for every coefficient of
/// its characteristic polynomial (the c_k are signed sums of principal minors).
bool psd_by_principal_minors(const MatQ& h);

/// inf over u of [u; y]* M [u; y] by cyclic exact coordinate minimization
/// over u, starting from u = x. Stops once every coordinate gradient is
/// negligible or after `sweeps` sweeps.
double descent_infimum(const MatC& a, const MatC& b, const MatC& d, const VecC& x, const VecC& y,
                       int sweeps = 2000000);

/// Exact rank by fraction arithmetic on a copy, with full pivot search.
Index exact_rank(const MatQ& m);

}  // namespace shorted::oracle
