#pragma once

#include <vector>

#include "ptv/weightlat.hpp"

namespace ptv {

// Correspondence matrices attached to a weight orbit. All matrices are d x d
// where d is the orbit size, rows and columns indexed by orbit points in
// orbit order (point 0 is the base weight). Everything is exact.

// Pairing of the base weight against each orbit point: c[p] = (w, p).
// These are the coefficients of the weighted group-algebra element studied
// by the idempotency check, constant on the cosets behind each point.
std::vector<Rat> schur_coefficients(const WeightOrbit& orbit);

// Effective multiplicity of each orbit point: m[p] = (w, p) - (w, w).
// Nonnegative integers (Cauchy-Schwarz gives the bound, integrality is a
// property of the weight lattice pairing). Throws ValidationError
// NonIntegerEntry when an entry is not an integer. The total over the
// group, sum_p |H| * m[p], equals -|G| (w, w); that identity is checked
// here and a failure raises IdentityError EffectiveSumBroken.
std::vector<Int> d_effective(const WeightOrbit& orbit);

// The Kanev matrix: K[i][j] = (p_i, p_j) - (w, w) - 1 off the diagonal,
// K[i][i] = 0. Entries must be integers (NonIntegerEntry otherwise).
// Under the normalized invariant form they are also nonnegative: for
// distinct orbit points Cauchy-Schwarz is strict, so (p_i, p_j) - (w, w)
// is a positive integer. Nonnegativity is a guarantee, not a check.
QMat kanev_matrix(const WeightOrbit& orbit);

// The Schur matrix, built by the index route: for row i, each column j
// contributes |H|^2 (w, p_j) at column point_of(rep_i * rep_j). For fixed i
// that column map must be a bijection on points; a repeat means the orbit
// bookkeeping is broken and raises IdentityError OrbitIndexMiss.
QMat schur_matrix(const WeightOrbit& orbit);

// Residual of the master identity, as a matrix:
//   schur + |H|^2 (I - kanev) - ((w,w) + 1) |H|^2 J
// where J is the all-ones matrix. Zero iff the identity holds.
QMat master_identity_residual(const QMat& schur, const QMat& kanev,
                              const Rat& ww, std::size_t stab_order);

// Builds both matrices for the orbit and checks the residual entrywise.
// Throws IdentityError MasterIdentityViolated naming the first offending
// entry. Exact comparison, no tolerance.
void verify_master_identity(const WeightOrbit& orbit);

// Common row sum of the Kanev matrix. All rows must agree; a disagreement
// raises IdentityError RowSumMismatch.
Int kanev_degree(const WeightOrbit& orbit);

// The exponent e = -d (w, w) / n where n is the lattice rank. Must be a
// positive integer; otherwise ValidationError NonIntegerExponent.
Int exponent(const WeightOrbit& orbit);

// Fits the scalar f with |H| P^2 == f P, where P is the orbit pairing
// matrix P[i][j] = (p_i, p_j). This is the coset-collapsed form of the
// group-algebra statement S^2 = f S for S = sum_g (w, gw) g. Returns f;
// throws IdentityError IdempotencyBroken if no scalar works.
Rat schur_idempotency(const WeightOrbit& orbit);

} // namespace ptv
