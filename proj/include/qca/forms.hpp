#pragma once

#include <optional>
#include <string>

#include "qca/matrix.hpp"

namespace qca {

enum class FormKind { Quadratic, Hermitian };

// Value matrix M with M_jk = phi(e_j, e_k); the value on column vectors is u^dag M v.
// Sign s in {+1, -1}: hermitian means M^dag = s M; quadratic forms are taken
// modulo theta - s theta^dag.
struct Form {
    FormKind kind = FormKind::Quadratic;
    int sign = -1;
    PolyMatrix m;

    size_t dim() const { return m.rows(); }
    const RingCtx& ctx() const { return m.ctx(); }
};

Form make_quadratic(const PolyMatrix& m, int sign);
Form make_hermitian(const PolyMatrix& m, int sign); // validates M^dag = s M

PolyMatrix eta_matrix(const RingCtx& ctx, size_t q);            // [[0, I], [0, 0]]
PolyMatrix lambda_matrix(const RingCtx& ctx, size_t q, int s);  // [[0, I], [s I, 0]]
Form eta_form(const RingCtx& ctx, size_t q, int s);
Form lambda_form(const RingCtx& ctx, size_t q, int s);

bool is_hermitian(const PolyMatrix& m, int s);
Form assoc(const Form& phi); // identity on hermitian input
bool is_nonsingular(const Form& f);
bool is_even(const Form& delta);
bool equivalent(const Form& phi, const Form& xi);
// K: columns spanning the candidate sublagrangian.
bool is_sublagrangian(const Form& f, const PolyMatrix& k);

Form congruent(const Form& f, const PolyMatrix& e); // E^dag M E
Form dsum(const Form& a, const Form& b);
Form negate(const Form& f);

// xi with xi + r xi^dag = d, for d^dag = r d (and d even when p = 2).
PolyMatrix split(const PolyMatrix& d, int r);

struct WittNegative {
    Form psi;
    PolyMatrix t;
    PolyMatrix t_inv;
};
WittNegative witt_negative(const Form& phi);

Form s_map(const Form& phi);
Form s_section(const Form& delta);

// Element of the Witt group of F_p for a given sign and kind.
struct WittClass {
    enum class Group { Zero, Z2, Z4, Z2xZ2 };
    uint32_t p = 2;
    int sign = -1;
    FormKind kind = FormKind::Quadratic;
    Group group = Group::Zero;
    int a = 0, b = 0;

    bool is_zero() const { return a == 0 && b == 0; }
    WittClass operator+(const WittClass& o) const;
    WittClass operator-() const;
    WittClass times(int n) const;
    bool operator==(const WittClass& o) const { return group == o.group && a == o.a && b == o.b; }
    bool operator!=(const WittClass& o) const { return !(*this == o); }
    int order() const;
    std::string value_string() const;
    std::string to_string() const; // e.g. "1 in Z/2"
};

WittClass::Group witt_group(uint32_t p, int sign, FormKind kind);
std::string group_name(WittClass::Group g);
WittClass witt_zero(uint32_t p, int sign, FormKind kind);

WittClass witt_class_f(const Form& f);    // no variables
WittClass witt_class_1var(const Form& f); // exactly one variable
WittClass witt_class(const Form& f);      // dispatches on variable count (at most one)

// Isotropic-vector search and hyperbolic-plane splitting over F_p.
std::optional<PolyMatrix> find_isotropic(const Form& f);
Form anisotropic_core(const Form& f);

} // namespace qca
