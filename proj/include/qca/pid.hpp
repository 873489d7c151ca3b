#pragma once

#include <optional>
#include <vector>

#include "qca/matrix.hpp"

namespace qca {

// Dense matrix over F_p, used for the zero-variable fast paths.
struct FpMat {
    uint32_t p = 2;
    size_t rows = 0, cols = 0;
    std::vector<uint32_t> a;

    FpMat() = default;
    FpMat(uint32_t p_, size_t r, size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}
    uint32_t& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    uint32_t operator()(size_t i, size_t j) const { return a[i * cols + j]; }
};

FpMat to_fp(const PolyMatrix& m); // requires constant entries
PolyMatrix from_fp(const FpMat& m, const RingCtx& ctx);
FpMat fp_mul(const FpMat& a, const FpMat& b);
// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> fp_rref(FpMat& m);
size_t fp_rank(FpMat m);
uint32_t fp_determinant(FpMat m);
FpMat fp_inverse(const FpMat& m); // throws NotInvertible
FpMat fp_kernel(const FpMat& m);  // columns form a basis

// Smith normal form over F_p or F_p[z, 1/z]: U * M * V = D.
struct Smith {
    PolyMatrix U, D, V, Uinv, Vinv;
    size_t rank = 0;
};

// All functions below require at most one variable (UnsupportedDimension otherwise).
Smith smith_normal_form(const PolyMatrix& m);
size_t rank(const PolyMatrix& m);
// Columns form a free basis of the kernel.
PolyMatrix kernel(const PolyMatrix& m);
std::optional<PolyMatrix> solve(const PolyMatrix& m, const PolyMatrix& b);
bool is_direct_summand(const PolyMatrix& k);
// Invertible matrix whose first columns are k; throws DomainError if k is not a summand.
PolyMatrix complete_basis(const PolyMatrix& k);
// Same column span with small z-spreads (alternating top and bottom Popov passes).
PolyMatrix reduce_basis(const PolyMatrix& k);

} // namespace qca
