#include "qca/ascent.hpp"

namespace qca {

namespace {

struct Blocks {
    PolyMatrix a, b, c, d;
};

Blocks blocks_of(const PolyMatrix& u) {
    size_t q = u.rows() / 2;
    return {u.block(0, 0, q, q), u.block(0, q, q, q), u.block(q, 0, q, q), u.block(q, q, q, q)};
}

Unitary checked_eta_input(const Unitary& u, const std::string& newvar) {
    if (!check_eta(u.m, u.sign())) throw DomainError("ascent from unitaries needs an eta-unitary");
    return embed(u, newvar);
}

} // namespace

Form embed(const Form& f, const std::string& newvar) { return Form{f.kind, f.sign, embed(f.m, newvar)}; }

Unitary embed(const Unitary& u, const std::string& newvar) { return Unitary{u.flavor, embed(u.m, newvar)}; }

Unitary ascend_form(const Form& f, const std::string& newvar) {
    Form xi = embed(f, newvar);
    bool herm = f.kind == FormKind::Hermitian;
    if (herm) {
        if (!is_hermitian(f.m, f.sign)) throw DomainError("hermitian input fails M^dag = s M");
        xi = s_section(xi);
    }
    if (!is_nonsingular(xi)) throw DomainError("ascent needs a nonsingular form");
    WittNegative wn = witt_negative(xi);
    size_t n = f.dim();
    const RingCtx& c = xi.ctx();
    int z = c.require_var(newvar);
    PolyMatrix shift = PolyMatrix::identity(c, 2 * n);
    for (size_t i = 0; i < n; ++i) shift(i, i) = shift.var(z);
    PolyMatrix u = wn.t_inv * shift * wn.t;
    Flavor fl = make_flavor(!herm, f.sign);
    if (!check_flavor(u, fl)) throw InternalError("ascended form fails the " + flavor_name(fl) + " check");
    return Unitary{fl, u};
}

Form ascend_unitary_hermitian(const Unitary& in, const std::string& newvar) {
    Unitary u = checked_eta_input(in, newvar);
    int s = u.sign();
    const RingCtx& ctx = u.ctx();
    int zi = ctx.require_var(newvar);
    size_t q = u.q();
    Blocks k = blocks_of(u.m);
    PolyMatrix xi = adjoint(k.a) * k.c, gamma = adjoint(k.a) * k.d;
    PolyMatrix delta = adjoint(k.b) * k.c, rho = adjoint(k.b) * k.d;
    PolyMatrix id = PolyMatrix::identity(ctx, q);
    QCA_CHECK(gamma + adjoint(delta) * id.scalar(s) == id, "gamma + s delta^dag = I");

    LaurentPoly z = id.var(zi), zinv = id.var(zi, -1), one = id.scalar(1);
    LaurentPoly ss = id.scalar(s);
    PolyMatrix top_right = -(gamma * z) - adjoint(delta) * ss;
    PolyMatrix bottom_left = delta + adjoint(gamma) * (ss * zinv);
    PolyMatrix bottom_right = rho * (id.scalar(2) - z - zinv);
    PolyMatrix out = block2(xi, top_right, bottom_left, bottom_right);

    // diag(z/(z-1) I, I) U^dag [[0, I], [s z^{-1} I, 0]] U diag(I, (1-z) I)
    PolyMatrix mid = block2(PolyMatrix(ctx, q, q), id, id * (ss * zinv), PolyMatrix(ctx, q, q));
    PolyMatrix five = adjoint(u.m) * mid * u.m;
    LaurentPoly zm1 = z - one;
    for (size_t i = 0; i < 2 * q; ++i)
        for (size_t j = 0; j < 2 * q; ++j) {
            LaurentPoly x = five(i, j);
            if (j >= q) x = x * (one - z);
            if (i < q) {
                LaurentPoly quo;
                QCA_CHECK((x * z).divides_into(zm1, quo), "five-matrix product is not divisible by z - 1");
                x = quo;
            }
            QCA_CHECK(x == out(i, j), "hermitian ascent disagrees with the five-matrix product");
        }
    Form f = make_hermitian(out, -s);
    QCA_CHECK(is_even(f), "hermitian ascent is not even");
    return f;
}

Form ascend_unitary_quadratic(const Unitary& in, const std::string& newvar) {
    Unitary u = checked_eta_input(in, newvar);
    int s = u.sign();
    const RingCtx& ctx = u.ctx();
    int zi = ctx.require_var(newvar);
    size_t q = u.q();
    Blocks k = blocks_of(u.m);
    PolyMatrix id = PolyMatrix::identity(ctx, q);
    LaurentPoly z = id.var(zi), one = id.scalar(1);
    PolyMatrix xi = split(adjoint(k.a) * k.c, -s);
    PolyMatrix out = block2(xi, -(adjoint(k.a) * k.d * z), adjoint(k.b) * k.c, adjoint(k.b) * k.d * (one - z));
    Form f = make_quadratic(out, -s);
    QCA_CHECK(is_nonsingular(f), "quadratic ascent is singular");
    return f;
}

} // namespace qca
