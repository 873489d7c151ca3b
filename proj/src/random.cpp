#include "qca/random.hpp"

#include "qca/pid.hpp"

namespace qca {

LaurentPoly random_poly(Rng& rng, const RingCtx& ctx, int terms, int spread) {
    std::uniform_int_distribution<int> nt(0, terms);
    std::uniform_int_distribution<int32_t> ex(-spread, spread);
    std::uniform_int_distribution<uint32_t> co(1, ctx.p - 1);
    LaurentPoly r(ctx.p, ctx.nvars());
    int k = nt(rng);
    for (int i = 0; i < k; ++i) {
        Exps e{};
        e.fill(0);
        for (int v = 0; v < ctx.nvars(); ++v) e[v] = ex(rng);
        r += LaurentPoly::monomial(ctx.p, ctx.nvars(), e, co(rng));
    }
    return r;
}

PolyMatrix random_matrix(Rng& rng, const RingCtx& ctx, size_t r, size_t c, int terms, int spread) {
    PolyMatrix m(ctx, r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m(i, j) = random_poly(rng, ctx, terms, spread);
    return m;
}

PolyMatrix random_invertible(Rng& rng, const RingCtx& ctx, size_t n, int steps, int spread) {
    PolyMatrix m = PolyMatrix::identity(ctx, n);
    if (n == 0) return m;
    std::uniform_int_distribution<size_t> idx(0, n - 1);
    std::uniform_int_distribution<int32_t> ex(-spread, spread);
    std::uniform_int_distribution<uint32_t> co(1, ctx.p - 1);
    for (int s = 0; s < steps; ++s) {
        size_t i = idx(rng), j = idx(rng);
        if (i == j || std::uniform_int_distribution<int>(0, 4)(rng) == 0) {
            Exps e{};
            e.fill(0);
            for (int v = 0; v < ctx.nvars(); ++v) e[v] = std::uniform_int_distribution<int32_t>(-1, 1)(rng);
            LaurentPoly u = LaurentPoly::monomial(ctx.p, ctx.nvars(), e, co(rng));
            for (size_t k = 0; k < n; ++k) m(i, k) = m(i, k) * u;
        } else {
            LaurentPoly c = random_poly(rng, ctx, 2, spread);
            for (size_t k = 0; k < n; ++k)
                if (!m(j, k).is_zero()) m(i, k) += c * m(j, k);
        }
    }
    return m;
}

PolyMatrix random_gl_fp(Rng& rng, const RingCtx& ctx, size_t n) {
    std::uniform_int_distribution<uint32_t> co(0, ctx.p - 1);
    for (;;) {
        FpMat f(ctx.p, n, n);
        for (auto& x : f.a) x = co(rng);
        if (fp_determinant(f)) return from_fp(f, ctx);
    }
}

Form random_quadratic_fp(Rng& rng, const RingCtx& ctx, size_t dim, int sign) {
    if ((ctx.p == 2 || sign < 0) && dim % 2) throw DomainError("no nonsingular form of odd dimension here");
    std::uniform_int_distribution<uint32_t> co(0, ctx.p - 1);
    for (;;) {
        FpMat f(ctx.p, dim, dim);
        for (auto& x : f.a) x = co(rng);
        Form phi = make_quadratic(from_fp(f, ctx), sign);
        if (is_nonsingular(phi)) return phi;
    }
}

Gate random_gate(Rng& rng, const RingCtx& ctx, size_t q, int sign, int spread, bool eta) {
    int kind = std::uniform_int_distribution<int>(0, 3)(rng);
    if (kind == 0) return Gate{Gate::Kind::H, size_t(rng() % q), {}};
    if (kind == 1) return Gate{Gate::Kind::X, 0, random_invertible(rng, ctx, q, 2 + int(rng() % 3), std::max(spread, 0))};
    PolyMatrix mu = random_matrix(rng, ctx, q, q, 2, spread);
    Gate g{kind == 2 ? Gate::Kind::Ztilde : Gate::Kind::ZtildeDag, 0, mu};
    if (eta) return g;
    // hermitian-flavor Z: mu - s mu^dag plus, for s = -1, arbitrary constants on the diagonal
    PolyMatrix th = mu - adjoint(mu) * mu.scalar(sign);
    if (sign < 0)
        for (size_t i = 0; i < q; ++i) th(i, i) += th.scalar(int64_t(rng() % ctx.p));
    return Gate{kind == 2 ? Gate::Kind::Z : Gate::Kind::Zdag, 0, th};
}

Circuit random_circuit(Rng& rng, const RingCtx& ctx, size_t q, int sign, int tokens, int spread, bool eta) {
    Circuit c{ctx, sign, q, {}};
    for (int i = 0; i < tokens; ++i) c.gates.push_back(random_gate(rng, ctx, q, sign, spread, eta));
    return c;
}

} // namespace qca
