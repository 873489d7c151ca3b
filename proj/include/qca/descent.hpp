#pragma once

#include <optional>
#include <string>

#include "qca/forms.hpp"
#include "qca/unitary.hpp"

namespace qca {

// Window module { v in A^+ : z-degrees in [lo, hi], U^{-1} v has no z-degree >= n }.
// Columns of `basis` stack the coefficient vectors of z^lo .. z^hi over the base ring.
struct BoundaryModule {
    std::string var;
    RingCtx base;      // ring with `var` removed
    int32_t n = 0;
    int32_t lo = 0, hi = -1;
    size_t q = 0;
    PolyMatrix basis;  // rows 2q * (hi - lo + 1)

    size_t rank() const { return basis.cols(); }
};

// n defaults to max(0, -mindeg_z U).
BoundaryModule boundary_module_of_unitary(const Unitary& u, const std::string& var, std::optional<int32_t> n = {});
// Gram matrix of [v_i^dag lambda v_j]_0 (hermitian) or [v_i^dag eta v_j]_0 (quadratic, eta flavors).
Form boundary_form(const BoundaryModule& bm, Flavor flavor);
Form boundary_form(const Unitary& u, const std::string& var, std::optional<int32_t> n = {});
WittClass boundary_class(const Unitary& u, const std::string& var);

// Independent oracle: the form on S^perp / S for the separator S = z^n (U (F_p[z]^q + 0)).
// Base ring F_p only.
Form boundary_via_separator(const Unitary& u, const std::string& var);

// L(Delta, B, n) and L*(Delta, B, n) inside M + M*, with M = sum_{k<n} z^k B.
// Rows: the t*n coordinates of M (block k = degree k) followed by those of M*.
struct LagrangianPair {
    PolyMatrix l;
    PolyMatrix lstar;
    int32_t n = 0;
    size_t m_rank = 0;     // t * n
    int sign = 1;          // sign of the trivial quadratic form on M + M*, = -sign(Delta)
};
LagrangianPair lagrangian_pair_from_form(const Form& delta, const std::string& var);

// Unitary of the given eta sign whose first half of columns is L.
Unitary formation_to_unitary(const PolyMatrix& l, int sign, std::optional<PolyMatrix> lstar = {});

Unitary descend_form(const Form& delta, const std::string& var);

} // namespace qca
