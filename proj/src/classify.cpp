#include "qca/classify.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "qca/ascent.hpp"
#include "qca/descent.hpp"

namespace qca {

WittClass::Group table_group(int d, uint64_t p) {
    if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
    if (d < 0) throw DomainError("dimension must be non-negative");
    using G = WittClass::Group;
    if (p == 2) return d % 2 == 1 && d >= 3 ? G::Z2 : G::Zero;
    if (d % 4 != 3) return G::Zero;
    return p % 4 == 3 ? G::Z4 : G::Z2xZ2;
}

std::string ClassDescriptor::to_string() const {
    std::ostringstream os;
    os << "class " << value.to_string();
    os << (source == Source::Computed ? " (computed" : " (certified by construction, not recomputed");
    os << "; d=" << d << ", p=" << p << ", " << flavor_name(flavor) << ")";
    return os.str();
}

namespace {

PolyMatrix cluster_matrix(const RingCtx& c) {
    return parse_matrix("z+z^-1, z+1+z^-1; z+1+z^-1, z+z^-1", c);
}

WittClass zero_class(uint32_t p, int sign, FormKind kind) {
    WittClass w;
    w.p = p;
    w.sign = sign;
    w.kind = kind;
    return w;
}

Unitary run_chain(const Form& seed, const std::vector<std::string>& vars, std::vector<std::string>* steps) {
    Form cur = seed;
    Unitary u;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (i % 2 == 0) {
            u = ascend_form(cur, vars[i]);
            if (steps) steps->push_back("ascend_form(" + vars[i] + ") -> " + flavor_name(u.flavor));
        } else {
            cur = ascend_unitary_quadratic(u, vars[i]);
            if (steps) steps->push_back("ascend_unitary_quadratic(" + vars[i] + ")");
        }
    }
    return u;
}

} // namespace

WittClass parse_class_element(uint32_t p, int sign, FormKind kind, const std::string& element) {
    WittClass w = zero_class(p, sign, kind);
    w.group = witt_group(p, sign, kind);
    std::string t;
    for (char ch : element)
        if (ch != ' ' && ch != '(' && ch != ')') t += ch;
    auto bad = [&]() { return DomainError("class element '" + element + "' is not in " + group_name(w.group)); };
    std::vector<int> parts;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) throw bad();
        parts.push_back(std::stoi(item));
    }
    using G = WittClass::Group;
    if (w.group == G::Z2xZ2) {
        if (parts.size() == 1 && parts[0] == 0) return w;
        if (parts.size() != 2 || parts[0] > 1 || parts[1] > 1) throw bad();
        w.a = parts[0];
        w.b = parts[1];
        return w;
    }
    int mod = w.group == G::Z4 ? 4 : w.group == G::Z2 ? 2 : 1;
    if (parts.size() != 1 || parts[0] >= mod) throw bad();
    w.a = parts[0];
    return w;
}

Form seed_form(const WittClass& w) {
    RingCtx c = make_ctx(w.p, {});
    if (w.is_zero()) return make_quadratic(PolyMatrix(c, 0, 0), w.sign);
    if (w.kind != FormKind::Quadratic) throw DomainError("seed forms are quadratic");
    if (w.p == 2) return make_quadratic(parse_matrix("1,1;0,1", c), w.sign);
    std::vector<LaurentPoly> d;
    auto push = [&](uint32_t x, int k) {
        for (int i = 0; i < k; ++i) d.push_back(LaurentPoly::constant(w.p, 0, x));
    };
    if (w.group == WittClass::Group::Z4) {
        push(1, w.a);
    } else if (w.group == WittClass::Group::Z2xZ2) {
        push(1, w.a);
        push(smallest_nonresidue(w.p), w.b);
    } else {
        throw DomainError("no seed form for " + w.to_string());
    }
    Form f = make_quadratic(PolyMatrix::diag(c, d), w.sign);
    QCA_CHECK(witt_class(f) == w, "seed form has the wrong class");
    return f;
}

Representative representative(uint64_t p64, int d, const std::string& element) {
    if (d < 1) throw DomainError("representatives need d >= 1");
    RingCtx c = make_ctx(p64, default_var_names(d));
    uint32_t p = c.p;
    Representative r;
    r.prov.p = p;
    r.prov.d = d;
    r.prov.vars = c.vars;
    if (d == 1 && p == 2) {
        WittClass w = parse_class_element(2, -1, FormKind::Quadratic, element);
        r.prov.seed = seed_form(w);
        r.prov.seed_class = w;
        r.prov.hard_coded = true;
        r.prov.steps = {"cluster-state matrix"};
        r.u = Unitary{Flavor::EtaMinus, w.is_zero() ? PolyMatrix::identity(c, 2) : cluster_matrix(c)};
        return r;
    }
    int sign = d % 4 == 3 ? 1 : -1;
    if (table_group(d, p) == WittClass::Group::Zero) {
        WittClass w = parse_class_element(p, sign, FormKind::Quadratic, element);
        if (!w.is_zero()) throw DomainError("no nonzero QCA class for d=" + std::to_string(d) + ", p=" + std::to_string(p));
        w.group = WittClass::Group::Zero;
        r.prov.seed = seed_form(w);
        r.prov.seed_class = w;
        r.u = Unitary{Flavor::EtaMinus, PolyMatrix::identity(c, 2)};
        return r;
    }
    WittClass w = parse_class_element(p, sign, FormKind::Quadratic, element);
    r.prov.seed = seed_form(w);
    r.prov.seed_class = w;
    if (w.is_zero()) {
        r.u = Unitary{Flavor::EtaMinus, PolyMatrix::identity(c, 2)};
        return r;
    }
    r.u = run_chain(r.prov.seed, c.vars, &r.prov.steps);
    QCA_CHECK(r.u.sign() == -1 && check_eta(r.u.m, -1), "ascent chain did not end in an eta- unitary");
    QCA_CHECK(substitute_all_one(r.u.m).is_identity(), "ascent chain does not collapse to I at 1");
    r.u.flavor = Flavor::EtaMinus;
    return r;
}

ClassDescriptor classify(const Unitary& u, const Provenance* prov) {
    const RingCtx& ctx = u.ctx();
    ClassDescriptor cd;
    cd.d = ctx.nvars();
    cd.p = ctx.p;
    cd.flavor = u.flavor;
    if (!check_flavor(u.m, u.flavor)) throw DomainError("input is not a " + flavor_name(u.flavor) + " unitary");
    int s = u.sign();
    FormKind kind = flavor_is_eta(u.flavor) ? FormKind::Quadratic : FormKind::Hermitian;

    if (prov) {
        if (prov->p != ctx.p || prov->vars != ctx.vars) throw DomainError("provenance does not match the input ring");
        PolyMatrix expect;
        if (prov->hard_coded)
            expect = prov->seed_class.is_zero() ? PolyMatrix::identity(ctx, 2) : cluster_matrix(ctx);
        else if (prov->seed_class.is_zero())
            expect = PolyMatrix::identity(ctx, 2);
        else
            expect = run_chain(prov->seed, prov->vars, nullptr).m;
        if (expect != u.m) throw DomainError("provenance does not reproduce the input unitary");
        cd.source = ClassDescriptor::Source::Certified;
        cd.flavor = Flavor::EtaMinus;
        cd.value = prov->seed_class;
        cd.details = prov->steps;
        return cd;
    }

    if (cd.d == 0) {
        cd.value = zero_class(ctx.p, s, kind);
        return cd;
    }
    if (cd.d == 1) {
        if (u.flavor == Flavor::LambdaMinus) {
            Circuit w = decompose_1d(u.m);
            QCA_CHECK(eval_circuit(w) == u.m, "decomposition witness does not evaluate to the input");
            cd.witness = w;
            cd.value = zero_class(ctx.p, s, kind);
            return cd;
        }
        cd.value = boundary_class(u, ctx.vars[0]);
        return cd;
    }
    if (cd.d == 2) {
        if (s != -1) throw UnsupportedDimension("two-dimensional classification covers the sign -1 flavors only");
        const std::string& x = ctx.vars[0];
        const std::string& y = ctx.vars[1];
        Form f = boundary_form(u, y);
        cd.details.push_back("boundary along " + y + ": " + (f.kind == FormKind::Quadratic ? "quadratic" : "hermitian") +
                             " form of dimension " + std::to_string(f.dim()) + ", class at " + x + "=1: " +
                             witt_class(f).to_string());
        Form h = f.kind == FormKind::Quadratic ? assoc(f) : f;
        Unitary down = descend_form(h, x);
        cd.details.push_back("descended along " + x + ": " + flavor_name(down.flavor) + " unitary on " +
                             std::to_string(down.q()) + " slots over F_" + std::to_string(ctx.p));
        cd.details.push_back("over a field every unitary is elementary");
        cd.flavor = Flavor::LambdaMinus;
        cd.value = zero_class(ctx.p, -1, FormKind::Hermitian);
        return cd;
    }
    throw UnsupportedDimension("no computed invariant for d = " + std::to_string(cd.d) +
                               "; only representatives built here carry a certified class");
}

// ---- blending ----

namespace {

struct BlendOp {
    bool local = true;
    PolyMatrix g;               // local: z-free matrix over Base
    int32_t lo = 0, hi = -1;    // off-diagonal part N = sum_k n[k - lo] z^k
    std::vector<PolyMatrix> n;
};

std::vector<BlendOp> blend_ops(const Circuit& c, const std::string& var, const RingCtx& base, int32_t& spread) {
    using K = Gate::Kind;
    c.ctx.require_var(var);
    std::vector<BlendOp> ops;
    spread = 0;
    for (const Gate& gate : c.gates) {
        PolyMatrix m = move_var_last(eval_gate(gate, c.ctx, c.q, c.sign), var);
        int last = m.nvars() - 1;
        auto [lo, hi] = z_spread(m, last);
        BlendOp op;
        if (lo == 0 && hi == 0) {
            op.g = coeff_in(m, last, 0).retyped(base);
        } else if (gate.kind == K::Z || gate.kind == K::Zdag || gate.kind == K::Ztilde || gate.kind == K::ZtildeDag) {
            op.local = false;
            PolyMatrix nm = m - PolyMatrix::identity(m.ctx(), m.rows());
            std::tie(op.lo, op.hi) = z_spread(nm, last);
            for (int32_t k = op.lo; k <= op.hi; ++k) op.n.push_back(coeff_in(nm, last, k).retyped(base));
            spread += std::max(std::abs(op.lo), std::abs(op.hi));
        } else {
            throw DomainError("factor " + gate_to_string(gate, c.ctx, c.q) + " moves sites along " + var +
                              " and cannot blend into the identity");
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

// Applies the blended product g_0 g_1 ... to the columns of v (sites [-r, r], blocks of w).
PolyMatrix apply_ops(const std::vector<BlendOp>& ops, PolyMatrix v, int32_t r, size_t w) {
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const BlendOp& op = *it;
        if (op.local) {
            for (int32_t k = 0; k <= r; ++k) {
                size_t r0 = size_t(k + r) * w;
                v.set_block(r0, 0, op.g * v.block(r0, 0, w, v.cols()));
            }
            continue;
        }
        PolyMatrix out = v;
        for (int32_t m = 0; m <= r; ++m) {
            PolyMatrix acc(v.ctx(), w, v.cols());
            for (int32_t j = op.lo; j <= op.hi; ++j) {
                int32_t k = m - j;
                if (k < 0 || k > r) continue;
                acc += op.n[size_t(j - op.lo)] * v.block(size_t(k + r) * w, 0, w, v.cols());
            }
            size_t r0 = size_t(m + r) * w;
            out.set_block(r0, 0, out.block(r0, 0, w, v.cols()) + acc);
        }
        v = out;
    }
    return v;
}

PolyMatrix site_embedding(const RingCtx& base, int32_t l, int32_t r, size_t w) {
    PolyMatrix e(base, size_t(2 * r + 1) * w, size_t(2 * l + 1) * w);
    for (size_t i = 0; i < e.cols(); ++i) e(size_t(r - l) * w + i, i) = e.scalar(1);
    return e;
}

} // namespace

BlendCertificate blend_certificate(const Circuit& c, const std::string& var) {
    BlendCertificate b;
    b.var = var;
    b.q = c.q;
    b.sign = c.sign;
    RingCtx base = ctx_without_var(c.ctx, var);
    int32_t spread = 0;
    std::vector<BlendOp> ops = blend_ops(c, var, base, spread);
    Circuit inv = inverse_circuit(c);
    int32_t spread_inv = 0;
    std::vector<BlendOp> inv_ops = blend_ops(inv, var, base, spread_inv);
    b.n = spread;
    b.l = b.n + 2;
    b.r = b.l + b.n;
    size_t w = 2 * c.q;
    b.u = eval_circuit(c);
    b.window = apply_ops(ops, site_embedding(base, b.l, b.r, w), b.r, w);
    b.window_inv = apply_ops(inv_ops, site_embedding(base, b.r, b.r + b.n, w), b.r + b.n, w);
    if (!verify_blend(b)) throw InternalError("blend certificate failed its own verification");
    return b;
}

bool verify_blend(const BlendCertificate& b) {
    size_t w = 2 * b.q;
    const RingCtx& base = b.window.ctx();
    PolyMatrix um = move_var_last(b.u, b.var);
    int last = um.nvars() - 1;
    auto [ulo, uhi] = z_spread(um, last);
    if (std::max(std::abs(ulo), std::abs(uhi)) > b.r - b.l) return false;
    for (int32_t k = -b.l; k <= b.l; ++k) {
        PolyMatrix got = b.window.block(0, size_t(k + b.l) * w, b.window.rows(), w);
        PolyMatrix want(base, b.window.rows(), w);
        if (k >= b.n) {
            for (int32_t j = ulo; j <= uhi; ++j)
                want.set_block(size_t(k + j + b.r) * w, 0, coeff_in(um, last, j).retyped(base));
        } else if (k < -b.n) {
            want.set_block(size_t(k + b.r) * w, 0, PolyMatrix::identity(base, w));
        } else {
            continue;
        }
        if (got != want) return false;
    }
    // form preservation: sum over sites of v^dag lambda w
    PolyMatrix lam = lambda_matrix(base, b.q, b.sign);
    PolyMatrix big(base, b.window.rows(), b.window.rows());
    for (size_t k = 0; k < b.window.rows(); k += w) big.set_block(k, k, lam);
    PolyMatrix small(base, b.window.cols(), b.window.cols());
    for (size_t k = 0; k < b.window.cols(); k += w) small.set_block(k, k, lam);
    if (adjoint(b.window) * big * b.window != small) return false;
    // invertibility: the blended inverse undoes the window
    PolyMatrix back = b.window_inv * b.window;
    return back == site_embedding(base, b.l, b.r + b.n, w);
}

bool cg_kill_check(const Form& phi, int b) {
    if (b < 1) throw DomainError("b must be positive");
    if (!is_nonsingular(phi)) throw DomainError("form is singular");
    Form sum = phi;
    for (int i = 1; i < b; ++i) sum = dsum(sum, phi);
    return witt_class(sum).is_zero();
}

} // namespace qca
