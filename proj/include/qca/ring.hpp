#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qca/error.hpp"

namespace qca {

constexpr int kMaxVars = 8;
using Exps = std::array<int32_t, kMaxVars>;

// ---- scalar arithmetic mod p ----

inline uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p) {
    uint64_t s = uint64_t(a) + b;
    return uint32_t(s >= p ? s - p : s);
}
inline uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p) { return a >= b ? a - b : uint32_t(uint64_t(a) + p - b); }
inline uint32_t fp_neg(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }
inline uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p) { return uint32_t(uint64_t(a) * b % p); }
uint32_t fp_pow(uint32_t a, uint64_t e, uint32_t p);
uint32_t fp_inv(uint32_t a, uint32_t p); // throws DomainError on a == 0
uint32_t fp_from_int(int64_t v, uint32_t p);
bool is_prime(uint64_t p);
bool fp_is_square(uint32_t a, uint32_t p); // a != 0, p odd
uint32_t smallest_nonresidue(uint32_t p);   // p odd

// Coefficient field and variable names shared by the entries of a matrix.
struct RingCtx {
    uint32_t p = 2;
    std::vector<std::string> vars;

    int nvars() const { return int(vars.size()); }
    int var_index(const std::string& name) const; // -1 if absent
    int require_var(const std::string& name) const; // throws DomainError
    bool operator==(const RingCtx& o) const { return p == o.p && vars == o.vars; }
    bool operator!=(const RingCtx& o) const { return !(*this == o); }
};

// Validates primality and variable names.
RingCtx make_ctx(uint64_t p, std::vector<std::string> vars);
RingCtx ctx_with_var(const RingCtx& c, const std::string& name);     // appended
RingCtx ctx_without_var(const RingCtx& c, const std::string& name);
RingCtx ctx_renamed(const RingCtx& c, const std::string& from, const std::string& to);

struct Term {
    Exps e;
    uint32_t c;
};

// Sparse Laurent polynomial over F_p. Terms are kept sorted by exponent
// vector with no zero coefficients, so structural equality is ring equality.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(uint32_t p, int nvars) : p_(p), n_(nvars) {}

    static LaurentPoly constant(uint32_t p, int nvars, int64_t c);
    static LaurentPoly monomial(uint32_t p, int nvars, const Exps& e, uint32_t c);
    static LaurentPoly variable(uint32_t p, int nvars, int i, int32_t power = 1);

    uint32_t p() const { return p_; }
    int nvars() const { return n_; }
    const std::vector<Term>& terms() const { return t_; }
    size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    bool is_monomial() const { return t_.size() == 1; }
    // Units of the Laurent ring are exactly c * monomial.
    bool is_unit() const { return t_.size() == 1; }
    uint32_t coeff(const Exps& e) const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly scaled(uint32_t c) const;
    LaurentPoly shifted(const Exps& e) const; // multiply by x^e
    bool operator==(const LaurentPoly& o) const;
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // Inverse of a unit; throws NotInvertible otherwise.
    LaurentPoly unit_inverse() const;
    // Exact quotient a / b; nullopt-like failure reported by returning false.
    bool divides_into(const LaurentPoly& b, LaurentPoly& quotient) const; // *this / b
    LaurentPoly exact_div(const LaurentPoly& b) const;                   // throws on remainder

    int32_t min_deg(int var) const; // 0 for zero polynomial
    int32_t max_deg(int var) const;

    // Coefficient of var^k as a polynomial in the remaining variables (same nvars, var exponent 0).
    LaurentPoly coeff_in(int var, int32_t k) const;

    LaurentPoly with_nvars(int n) const; // widen (new exponents zero) or narrow (dropped must be zero)

    // Univariate Euclidean structure (valid when at most one variable is present).
    int32_t span_degree() const; // max - min exponent in the single variable; -1 for zero
    bool univariate() const;

    std::vector<Term>& mutable_terms() { return t_; }
    void normalize(); // sort and merge; drops zeros

private:
    uint32_t p_ = 2;
    int n_ = 0;
    std::vector<Term> t_;
};

LaurentPoly involute(const LaurentPoly& r);
uint32_t const_term(const LaurentPoly& r);
uint32_t augment(const LaurentPoly& r);
// Sets var to 1 and removes it from the ring (result has nvars - 1 variables).
LaurentPoly substitute_one(const LaurentPoly& r, int var);
// Inserts a fresh variable at the end (exponent zero).
LaurentPoly embed_poly(const LaurentPoly& r);

// Univariate division with remainder over F_p[z, 1/z] after monomial normalization.
// a = q*b + r with span_degree(r) < span_degree(b).
void laurent_divrem(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& q, LaurentPoly& r);
// Unit u such that u*a has lowest exponent 0 and top coefficient 1.
LaurentPoly normalizing_unit(const LaurentPoly& a);

// Text form. Parsing reports errors with positions relative to the given origin.
std::string to_string(const LaurentPoly& r, const RingCtx& ctx);
LaurentPoly parse_poly(const std::string& text, const RingCtx& ctx, int line = 1, int col = 1);

} // namespace qca
