#include "qca/descent.hpp"

#include <algorithm>
#include <cstdlib>

#include "qca/pid.hpp"

namespace qca {

namespace {

// m = sum_k c[k - lo] z^k with coefficients over the base ring.
struct Expansion {
    int32_t lo = 0, hi = -1;
    std::vector<PolyMatrix> c;
    size_t rows = 0, cols = 0;
    RingCtx base;

    const PolyMatrix* at(int32_t k) const {
        if (k < lo || k > hi) return nullptr;
        return &c[size_t(k - lo)];
    }
};

Expansion expand(const PolyMatrix& m, const std::string& var, const RingCtx& base) {
    PolyMatrix mm = move_var_last(m, var);
    int last = mm.nvars() - 1;
    Expansion e;
    e.rows = m.rows();
    e.cols = m.cols();
    e.base = base;
    if (m.is_zero()) return e;
    auto [lo, hi] = z_spread(mm, last);
    e.lo = lo;
    e.hi = hi;
    for (int32_t k = lo; k <= hi; ++k) e.c.push_back(coeff_in(mm, last, k).retyped(base));
    return e;
}

// Matrix of v -> (degrees olo..ohi of m v) for v with degrees vlo..vhi.
PolyMatrix toeplitz(const Expansion& e, int32_t vlo, int32_t vhi, int32_t olo, int32_t ohi) {
    size_t nv = vhi >= vlo ? size_t(vhi - vlo + 1) : 0;
    size_t no = ohi >= olo ? size_t(ohi - olo + 1) : 0;
    PolyMatrix t(e.base, no * e.rows, nv * e.cols);
    for (int32_t m = olo; m <= ohi; ++m)
        for (int32_t k = vlo; k <= vhi; ++k)
            if (const PolyMatrix* w = e.at(m - k)) t.set_block(size_t(m - olo) * e.rows, size_t(k - vlo) * e.cols, *w);
    return t;
}

PolyMatrix kernel_or_all(const PolyMatrix& t) {
    if (t.rows() == 0 || t.is_zero()) return PolyMatrix::identity(t.ctx(), t.cols());
    return kernel(t);
}

int32_t max_abs_degree(const PolyMatrix& m, int var) {
    if (m.is_zero()) return 0;
    auto [lo, hi] = z_spread(m, var);
    return std::max(std::abs(lo), std::abs(hi));
}

// sum_k V_k^dag g V_k over the stacked blocks of V.
PolyMatrix windowed_gram(const PolyMatrix& v, const PolyMatrix& g) {
    size_t w = g.rows();
    PolyMatrix acc(v.ctx(), v.cols(), v.cols());
    if (v.cols() == 0) return acc;
    for (size_t r0 = 0; r0 < v.rows(); r0 += w) {
        PolyMatrix vk = v.block(r0, 0, w, v.cols());
        if (vk.is_zero()) continue;
        acc += adjoint(vk) * g * vk;
    }
    return acc;
}

Form gram_form(const PolyMatrix& v, const RingCtx& base, size_t q, Flavor flavor) {
    int s = flavor_sign(flavor);
    Form f;
    if (flavor_is_eta(flavor))
        f = make_quadratic(windowed_gram(v, eta_matrix(base, q)), s);
    else
        f = make_hermitian(windowed_gram(v, lambda_matrix(base, q, s)), s);
    if (f.dim() > 0 && !is_nonsingular(f)) throw InternalError("boundary form is singular");
    return f;
}

void require_descent_ring(const RingCtx& c, const std::string& var) {
    c.require_var(var);
    if (c.nvars() > 2) throw UnsupportedDimension("descent needs at most one variable besides " + var);
}

} // namespace

BoundaryModule boundary_module_of_unitary(const Unitary& u, const std::string& var, std::optional<int32_t> n) {
    require_descent_ring(u.ctx(), var);
    if (!check_flavor(u.m, u.flavor)) throw DomainError("input is not a " + flavor_name(u.flavor) + " unitary");
    BoundaryModule bm;
    bm.var = var;
    bm.base = ctx_without_var(u.ctx(), var);
    bm.q = u.q();
    Expansion eu = expand(u.m, var, bm.base);
    int32_t n0 = std::max<int32_t>(0, -eu.lo);
    if (n && *n < n0) throw DomainError("n is too small for z^n (UA)^+ to lie in A^+");
    bm.n = n ? *n : n0;
    bm.lo = 0;
    bm.hi = bm.n - 1 + eu.hi;
    size_t w = 2 * bm.q;
    if (bm.hi < bm.lo) {
        bm.hi = bm.lo - 1;
        bm.basis = PolyMatrix(bm.base, 0, 0);
        return bm;
    }
    Expansion ew = expand(unitary_inverse(u.m, u.sign()), var, bm.base);
    PolyMatrix t = toeplitz(ew, bm.lo, bm.hi, bm.n, ew.hi + bm.hi);
    bm.basis = kernel_or_all(t);
    if (bm.base.nvars() == 1) bm.basis = reduce_basis(bm.basis);
    QCA_CHECK(bm.basis.rows() == w * size_t(bm.hi - bm.lo + 1), "boundary window size");
    return bm;
}

Form boundary_form(const BoundaryModule& bm, Flavor flavor) { return gram_form(bm.basis, bm.base, bm.q, flavor); }

Form boundary_form(const Unitary& u, const std::string& var, std::optional<int32_t> n) {
    return boundary_form(boundary_module_of_unitary(u, var, n), u.flavor);
}

WittClass boundary_class(const Unitary& u, const std::string& var) { return witt_class(boundary_form(u, var)); }

Form boundary_via_separator(const Unitary& u, const std::string& var) {
    u.ctx().require_var(var);
    if (u.ctx().nvars() != 1) throw UnsupportedDimension("the separator oracle runs over F_p[z, 1/z] only");
    if (!check_flavor(u.m, u.flavor)) throw DomainError("input is not a " + flavor_name(u.flavor) + " unitary");
    RingCtx base = ctx_without_var(u.ctx(), var);
    size_t q = u.q();
    int s = u.sign();
    Expansion eu = expand(u.m, var, base);
    int32_t n = std::max<int32_t>(0, -eu.lo);
    int32_t top = n + eu.hi + 1; // window [0, top]; two layers past the boundary module
    if (eu.hi + n - 1 < 0) return gram_form(PolyMatrix(base, 0, 0), base, q, u.flavor);

    // S^perp: [u_i^dag lambda v]_k = 0 for k >= n, u_i the first q columns of U.
    PolyMatrix left = u.m.block(0, 0, 2 * q, q);
    Expansion er = expand(adjoint(left) * lambda_matrix(u.ctx(), q, s), var, base);
    PolyMatrix perp = kernel_or_all(toeplitz(er, 0, top, n, er.hi + top));

    // S within the window: U^{-1} v = (w; 0) with w of degrees >= n.
    PolyMatrix uinv = unitary_inverse(u.m, s);
    Expansion ebot = expand(uinv.block(q, 0, q, 2 * q), var, base);
    Expansion etop = expand(uinv.block(0, 0, q, 2 * q), var, base);
    int32_t wlo = std::min(ebot.lo, etop.lo);
    PolyMatrix cond = vstack(toeplitz(ebot, 0, top, wlo, std::max(ebot.hi, etop.hi) + top),
                             toeplitz(etop, 0, top, wlo, n - 1));
    PolyMatrix sep = kernel_or_all(cond);

    auto coords = solve(perp, sep);
    if (!coords) throw InternalError("separator is not inside its orthogonal complement");
    PolyMatrix full = sep.cols() ? complete_basis(*coords) : PolyMatrix::identity(base, perp.cols());
    size_t k = sep.cols();
    PolyMatrix comp = perp * full.block(0, k, full.rows(), full.cols() - k);
    return gram_form(comp, base, q, u.flavor);
}

LagrangianPair lagrangian_pair_from_form(const Form& delta, const std::string& var) {
    require_descent_ring(delta.ctx(), var);
    if (delta.kind != FormKind::Hermitian || !is_hermitian(delta.m, delta.sign))
        throw DomainError("descent needs a hermitian form");
    if (!is_even(delta)) throw DomainError("descent needs an even form");
    PolyMatrix dinv;
    try {
        dinv = inverse(delta.m);
    } catch (const NotInvertible&) {
        throw DomainError("descent needs a nonsingular form");
    }
    RingCtx base = ctx_without_var(delta.ctx(), var);
    int zi = delta.ctx().require_var(var);
    size_t t = delta.dim();
    LagrangianPair lp;
    lp.sign = -delta.sign;
    lp.n = std::max(max_abs_degree(delta.m, zi), max_abs_degree(dinv, zi));
    int32_t n = lp.n;
    lp.m_rank = t * size_t(n);
    if (n == 0) {
        lp.l = PolyMatrix(base, 0, 0);
        lp.lstar = PolyMatrix(base, 0, 0);
        return lp;
    }
    Expansion ed = expand(delta.m, var, base);
    size_t m = lp.m_rank;

    // d_n(Delta^{-1} B*, B): degrees [0, 2n-1], Delta u has no degree >= n.
    PolyMatrix d1 = kernel_or_all(toeplitz(ed, 0, 2 * n - 1, n, 3 * n - 1));
    // d_n(B, Delta^{-1} B*): degrees [-n, n-1], Delta g has no degree < 0.
    PolyMatrix d2 = kernel_or_all(toeplitz(ed, -n, n - 1, -2 * n, -1));
    if (d1.cols() != m || d2.cols() != m) throw InternalError("boundary modules of the form have the wrong rank");

    lp.l = vstack(d1.block(0, 0, m, m), toeplitz(ed, 0, 2 * n - 1, 0, n - 1) * d1);
    lp.lstar = vstack(-d2.block(m, 0, m, m), toeplitz(ed, -n, -1, 0, n - 1) * d2.block(0, 0, m, m));
    return lp;
}

Unitary formation_to_unitary(const PolyMatrix& l, int sign, std::optional<PolyMatrix> lstar) {
    size_t m = l.cols();
    if (l.rows() != 2 * m) throw DomainError("a lagrangian of M + M* needs rank M columns");
    const RingCtx& ctx = l.ctx();
    if (!is_sublagrangian(eta_form(ctx, m, sign), l)) throw DomainError("columns do not span a lagrangian");
    PolyMatrix lam = lambda_matrix(ctx, m, sign);
    PolyMatrix eta = eta_matrix(ctx, m);
    PolyMatrix g;
    if (lstar) {
        if (lstar->rows() != 2 * m || lstar->cols() != m) throw DomainError("complement has the wrong shape");
        g = *lstar;
    } else {
        PolyMatrix full = complete_basis(l);
        g = full.block(0, m, 2 * m, m);
    }
    PolyMatrix pinv;
    try {
        pinv = inverse(adjoint(l) * lam * g);
    } catch (const NotInvertible&) {
        throw InternalError("lagrangian pairing is singular");
    }
    PolyMatrix y = g * pinv;
    PolyMatrix nn = adjoint(y) * lam * y;
    // K^dag + sign K = -N makes the second half isotropic.
    PolyMatrix k = split(-(nn * nn.scalar(sign)), sign);
    if (ctx.p == 2) {
        PolyMatrix quad = adjoint(y + l * k) * eta * (y + l * k);
        for (size_t j = 0; j < m; ++j) {
            uint32_t c = const_term(quad(j, j));
            if (c) k(j, j) += k.scalar(c);
        }
    }
    PolyMatrix u = hstack(l, y + l * k);
    if (!check_eta(u, sign)) throw InternalError("formation completion failed the eta check");
    return Unitary{make_flavor(true, sign), u};
}

Unitary descend_form(const Form& delta, const std::string& var) {
    LagrangianPair lp = lagrangian_pair_from_form(delta, var);
    if (lp.n == 0) return Unitary{make_flavor(true, lp.sign), PolyMatrix(ctx_without_var(delta.ctx(), var), 0, 0)};
    return formation_to_unitary(lp.l, lp.sign, lp.lstar);
}

} // namespace qca
