#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qca/ring.hpp"

namespace qca {

// Dense row-major matrix of Laurent polynomials over one ring context.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(const RingCtx& ctx, size_t rows, size_t cols);

    static PolyMatrix identity(const RingCtx& ctx, size_t n);
    static PolyMatrix from_ints(const RingCtx& ctx, const std::vector<std::vector<int64_t>>& rows);
    static PolyMatrix diag(const RingCtx& ctx, const std::vector<LaurentPoly>& d);

    const RingCtx& ctx() const { return ctx_; }
    uint32_t p() const { return ctx_.p; }
    int nvars() const { return ctx_.nvars(); }
    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    LaurentPoly& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const LaurentPoly& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    LaurentPoly zero() const { return LaurentPoly(ctx_.p, ctx_.nvars()); }
    LaurentPoly scalar(int64_t c) const { return LaurentPoly::constant(ctx_.p, ctx_.nvars(), c); }
    LaurentPoly var(int i, int32_t power = 1) const { return LaurentPoly::variable(ctx_.p, ctx_.nvars(), i, power); }

    PolyMatrix operator+(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;
    PolyMatrix operator-() const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix operator*(const LaurentPoly& r) const; // entrywise scaling
    PolyMatrix& operator+=(const PolyMatrix& o) { return *this = *this + o; }
    PolyMatrix& operator-=(const PolyMatrix& o) { return *this = *this - o; }
    bool operator==(const PolyMatrix& o) const;
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_identity() const;
    bool is_constant() const; // no variable appears

    PolyMatrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
    void set_block(size_t r0, size_t c0, const PolyMatrix& m);
    PolyMatrix col(size_t j) const { return block(0, j, r_, 1); }
    PolyMatrix transpose() const;
    size_t total_terms() const;

    // Same matrix regarded over another context with the same p (variables matched by position).
    PolyMatrix retyped(const RingCtx& c) const;

private:
    RingCtx ctx_;
    size_t r_ = 0, c_ = 0;
    std::vector<LaurentPoly> a_;
};

PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix block2(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c, const PolyMatrix& d);

PolyMatrix adjoint(const PolyMatrix& m);
PolyMatrix involute(const PolyMatrix& m);
LaurentPoly determinant(const PolyMatrix& m);
bool is_unit(const LaurentPoly& r);
// Throws NotInvertible when the determinant is not a unit.
PolyMatrix inverse(const PolyMatrix& m);

// Unitary direct sum: q-blocks of U and V interleaved blockwise.
PolyMatrix hat_dsum(const PolyMatrix& u, const PolyMatrix& v);
// Block diagonal sum.
PolyMatrix form_dsum(const PolyMatrix& a, const PolyMatrix& b);

std::pair<int32_t, int32_t> z_spread(const PolyMatrix& m, int var);
PolyMatrix coarse_grain(const PolyMatrix& m, int var, int b);

// Ring changes.
PolyMatrix embed(const PolyMatrix& m, const std::string& newvar);         // new variable appended
PolyMatrix substitute_one(const PolyMatrix& m, const std::string& var);   // var removed
PolyMatrix substitute_all_one(const PolyMatrix& m);                       // augmentation, 0 variables
PolyMatrix const_term(const PolyMatrix& m);                               // entrywise, 0 variables
// Moves variable `var` to the last position of the context.
PolyMatrix move_var_last(const PolyMatrix& m, const std::string& var);
// Coefficient matrix of var^k (result keeps the context).
PolyMatrix coeff_in(const PolyMatrix& m, int var, int32_t k);

std::string to_string(const PolyMatrix& m);
// Rows separated by ';' or newline, entries by ','.
PolyMatrix parse_matrix(const std::string& text, const RingCtx& ctx, int line0 = 1);

} // namespace qca
