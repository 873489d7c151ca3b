#pragma once

#include <random>

#include "qca/forms.hpp"
#include "qca/matrix.hpp"
#include "qca/unitary.hpp"

namespace qca {

using Rng = std::mt19937_64;

// Random polynomial with up to `terms` terms, exponents in [-spread, spread].
LaurentPoly random_poly(Rng& rng, const RingCtx& ctx, int terms, int spread);
PolyMatrix random_matrix(Rng& rng, const RingCtx& ctx, size_t r, size_t c, int terms, int spread);
// Product of random elementary row operations and monomial scalings; unit determinant.
PolyMatrix random_invertible(Rng& rng, const RingCtx& ctx, size_t n, int steps, int spread);
// Random matrix over F_p (no variables) with nonzero determinant.
PolyMatrix random_gl_fp(Rng& rng, const RingCtx& ctx, size_t n);
// Random nonsingular quadratic form over F_p of the given dimension (no variables).
Form random_quadratic_fp(Rng& rng, const RingCtx& ctx, size_t dim, int sign);

// Random generator token. eta: only eta-flavor generators (Ztilde, X, H).
Gate random_gate(Rng& rng, const RingCtx& ctx, size_t q, int sign, int spread, bool eta);
Circuit random_circuit(Rng& rng, const RingCtx& ctx, size_t q, int sign, int tokens, int spread, bool eta);

} // namespace qca
