#include "qca/unitary.hpp"

#include <algorithm>
#include <sstream>

#include "qca/pid.hpp"

namespace qca {

int flavor_sign(Flavor f) { return (f == Flavor::LambdaMinus || f == Flavor::EtaMinus) ? -1 : 1; }
bool flavor_is_eta(Flavor f) { return f == Flavor::EtaMinus || f == Flavor::EtaPlus; }

Flavor make_flavor(bool eta, int sign) {
    if (eta) return sign < 0 ? Flavor::EtaMinus : Flavor::EtaPlus;
    return sign < 0 ? Flavor::LambdaMinus : Flavor::LambdaPlus;
}

std::string flavor_name(Flavor f) {
    switch (f) {
    case Flavor::LambdaMinus: return "lambda-";
    case Flavor::LambdaPlus: return "lambda+";
    case Flavor::EtaMinus: return "eta-";
    case Flavor::EtaPlus: return "eta+";
    }
    return "?";
}

Flavor parse_flavor(const std::string& s) {
    if (s == "lambda-" || s == "lambda-minus" || s == "λ⁻") return Flavor::LambdaMinus;
    if (s == "lambda+" || s == "lambda-plus" || s == "λ⁺") return Flavor::LambdaPlus;
    if (s == "eta-" || s == "eta-minus" || s == "η⁻") return Flavor::EtaMinus;
    if (s == "eta+" || s == "eta-plus" || s == "η⁺") return Flavor::EtaPlus;
    throw DomainError("unknown flavor '" + s + "' (expected lambda-, lambda+, eta- or eta+)");
}

static bool even_square(const PolyMatrix& u) { return u.square() && u.rows() % 2 == 0; }

bool check_lambda(const PolyMatrix& u, int s) {
    if (!even_square(u)) return false;
    PolyMatrix lam = lambda_matrix(u.ctx(), u.rows() / 2, s);
    return adjoint(u) * lam * u == lam;
}

bool check_eta(const PolyMatrix& u, int s) {
    if (!check_lambda(u, s)) return false;
    if (u.p() != 2) return true;
    size_t q = u.rows() / 2;
    // diag(U^dag eta U)_j = a_j^dag c_j over the column j
    for (size_t j = 0; j < 2 * q; ++j) {
        LaurentPoly acc = u.zero();
        for (size_t i = 0; i < q; ++i) acc += involute(u(i, j)) * u(q + i, j);
        if (const_term(acc) != 0) return false;
    }
    return true;
}

bool check_flavor(const PolyMatrix& u, Flavor f) {
    return flavor_is_eta(f) ? check_eta(u, flavor_sign(f)) : check_lambda(u, flavor_sign(f));
}

Unitary make_unitary(const PolyMatrix& m, Flavor f) {
    if (!even_square(m)) throw DomainError("unitary must be a square matrix of even size");
    int s = flavor_sign(f);
    if (!check_lambda(m, s))
        throw DomainError(std::string("not ") + flavor_name(f) + "-unitary: U^dag lambda U != lambda with lambda = [[0,I],[" +
                          (s < 0 ? "-I" : "I") + ",0]]");
    if (flavor_is_eta(f) && !check_eta(m, s))
        throw DomainError("not " + flavor_name(f) + "-unitary: diag of U^dag eta U has a nonzero constant term");
    return Unitary{f, m};
}

PolyMatrix unitary_inverse(const PolyMatrix& u, int s) {
    size_t q = u.rows() / 2;
    PolyMatrix a = u.block(0, 0, q, q), b = u.block(0, q, q, q), c = u.block(q, 0, q, q), d = u.block(q, q, q, q);
    LaurentPoly sc = u.scalar(s);
    return block2(adjoint(d), adjoint(b) * sc, adjoint(c) * sc, adjoint(a));
}

PolyMatrix gen_H(const RingCtx& ctx, size_t q, int s) { return lambda_matrix(ctx, q, s); }

PolyMatrix gen_H_slot(const RingCtx& ctx, size_t q, int s, size_t slot) {
    if (slot >= q) throw DomainError("H slot out of range");
    PolyMatrix m = PolyMatrix::identity(ctx, 2 * q);
    m(slot, slot) = m.zero();
    m(q + slot, q + slot) = m.zero();
    m(slot, q + slot) = m.scalar(1);
    m(q + slot, slot) = m.scalar(s);
    return m;
}

PolyMatrix gen_X(const PolyMatrix& alpha) {
    if (!alpha.square()) throw DomainError("X(alpha) needs a square alpha");
    PolyMatrix inv = inverse(alpha); // throws NotInvertible
    return form_dsum(alpha, adjoint(inv));
}

PolyMatrix gen_Z(const PolyMatrix& theta, int s) {
    if (!theta.square()) throw DomainError("Z(theta) needs a square theta");
    if (adjoint(theta) != theta * theta.scalar(-s))
        throw DomainError(std::string("Z(theta) needs theta^dag = ") + (s < 0 ? "theta" : "-theta"));
    size_t q = theta.rows();
    PolyMatrix m = PolyMatrix::identity(theta.ctx(), 2 * q);
    m.set_block(q, 0, theta);
    return m;
}

PolyMatrix gen_Zdag(const PolyMatrix& theta, int s) { return adjoint(gen_Z(theta, s)); }

PolyMatrix gen_Ztilde(const PolyMatrix& mu, int s) { return gen_Z(mu - adjoint(mu) * mu.scalar(s), s); }

PolyMatrix trc_partner(const PolyMatrix& u) {
    if (!even_square(u)) throw DomainError("unitary must be a square matrix of even size");
    size_t q = u.rows() / 2;
    PolyMatrix r = u;
    for (size_t i = 0; i < q; ++i)
        for (size_t j = 0; j < q; ++j) {
            r(i, q + j) = -u(i, q + j);
            r(q + i, j) = -u(q + i, j);
        }
    return r;
}

// ---- circuits ----

static PolyMatrix pad_square(const PolyMatrix& m, size_t q, bool identity) {
    if (m.rows() == q) return m;
    if (m.rows() > q) throw DomainError("gate acts on more slots than the circuit");
    PolyMatrix rest = identity ? PolyMatrix::identity(m.ctx(), q - m.rows()) : PolyMatrix(m.ctx(), q - m.rows(), q - m.rows());
    return form_dsum(m, rest);
}

PolyMatrix eval_gate(const Gate& g, const RingCtx& ctx, size_t q, int s) {
    using K = Gate::Kind;
    switch (g.kind) {
    case K::H: return gen_H_slot(ctx, q, s, g.slot);
    case K::Hinv: {
        PolyMatrix h = gen_H_slot(ctx, q, s, g.slot);
        return unitary_inverse(h, s);
    }
    case K::X: return gen_X(pad_square(g.mat, q, true));
    case K::Z: return gen_Z(pad_square(g.mat, q, false), s);
    case K::Zdag: return gen_Zdag(pad_square(g.mat, q, false), s);
    case K::Ztilde: return gen_Ztilde(pad_square(g.mat, q, false), s);
    case K::ZtildeDag: return adjoint(gen_Ztilde(pad_square(g.mat, q, false), s));
    case K::Fixed:
        if (g.mat.rows() % 2 || !g.mat.square()) throw DomainError("fixed gate must be square of even size");
        if (g.mat.rows() == 2 * q) return g.mat;
        return hat_dsum(g.mat, PolyMatrix::identity(ctx, 2 * q - g.mat.rows()));
    }
    throw InternalError("unknown gate kind");
}

PolyMatrix eval_circuit(const Circuit& c) {
    PolyMatrix m = PolyMatrix::identity(c.ctx, 2 * c.q);
    for (const Gate& g : c.gates) m = m * eval_gate(g, c.ctx, c.q, c.sign);
    return m;
}

Circuit inverse_circuit(const Circuit& c) {
    using K = Gate::Kind;
    Circuit r{c.ctx, c.sign, c.q, {}};
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
        case K::H: g.kind = K::Hinv; break;
        case K::Hinv: g.kind = K::H; break;
        case K::X: g.mat = inverse(g.mat); break;
        case K::Z:
        case K::Zdag:
        case K::Ztilde:
        case K::ZtildeDag: g.mat = -g.mat; break;
        case K::Fixed: g.mat = inverse(g.mat); break;
        }
        r.gates.push_back(g);
    }
    return r;
}

static std::string mat_arg(const PolyMatrix& m) {
    if (m.rows() == 1 && m.cols() == 1) return to_string(m(0, 0), m.ctx());
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.rows(); ++i) {
        if (i) os << "; ";
        for (size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << to_string(m(i, j), m.ctx());
        }
    }
    os << "]";
    return os.str();
}

std::string gate_to_string(const Gate& g, const RingCtx&, size_t q) {
    using K = Gate::Kind;
    std::string slot = q > 1 ? "[" + std::to_string(g.slot + 1) + "]" : "";
    switch (g.kind) {
    case K::H: return "H" + slot;
    case K::Hinv: return "Hinv" + slot;
    case K::X: return "X(" + mat_arg(g.mat) + ")";
    case K::Z: return "Z(" + mat_arg(g.mat) + ")";
    case K::Zdag: return "Zdag(" + mat_arg(g.mat) + ")";
    case K::Ztilde: return "Ztilde(" + mat_arg(g.mat) + ")";
    case K::ZtildeDag: return "ZtildeDag(" + mat_arg(g.mat) + ")";
    case K::Fixed: return "U(" + mat_arg(g.mat) + ")";
    }
    return "?";
}

std::string circuit_to_string(const Circuit& c) {
    if (c.gates.empty()) return "I";
    std::string s;
    for (size_t i = 0; i < c.gates.size(); ++i) {
        if (i) s += " * ";
        s += gate_to_string(c.gates[i], c.ctx, c.q);
    }
    return s;
}

Gate recognize_gate(const PolyMatrix& m, int s) {
    size_t q = m.rows() / 2;
    PolyMatrix a = m.block(0, 0, q, q), b = m.block(0, q, q, q), c = m.block(q, 0, q, q), d = m.block(q, q, q, q);
    if (a.is_identity() && d.is_identity() && b.is_zero() && adjoint(c) == c * c.scalar(-s))
        return Gate{Gate::Kind::Z, 0, c};
    if (a.is_identity() && d.is_identity() && c.is_zero() && adjoint(b) == b * b.scalar(-s))
        return Gate{Gate::Kind::Zdag, 0, adjoint(b)};
    if (b.is_zero() && c.is_zero() && determinant(a).is_unit() && adjoint(inverse(a)) == d)
        return Gate{Gate::Kind::X, 0, a};
    if (q == 1 && m == gen_H(m.ctx(), 1, s)) return Gate{Gate::Kind::H, 0, {}};
    return Gate{Gate::Kind::Fixed, 0, m};
}

// ---- Pauli bridge ----

std::vector<std::string> default_var_names(int d) {
    if (d < 0 || d > kMaxVars) throw DomainError("unsupported lattice dimension " + std::to_string(d));
    if (d == 1) return {"z"};
    if (d == 2) return {"x", "y"};
    if (d == 3) return {"x", "y", "z"};
    std::vector<std::string> v;
    for (int i = 1; i <= d; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

static PolyMatrix pauli_matrix(const PauliSpec& spec) {
    RingCtx ctx = make_ctx(spec.p, default_var_names(spec.d));
    size_t q = spec.q;
    if (spec.images.size() != 2 * q) throw DomainError("Pauli spec needs images of X_1..X_q and Z_1..Z_q");
    PolyMatrix m(ctx, 2 * q, 2 * q);
    for (size_t j = 0; j < 2 * q; ++j)
        for (const PauliFactor& f : spec.images[j]) {
            if (f.qubit < 1 || size_t(f.qubit) > q) throw DomainError("Pauli factor qubit index out of range");
            if (int(f.site.size()) != spec.d) throw DomainError("Pauli factor site has the wrong number of coordinates");
            Exps e{};
            e.fill(0);
            for (int k = 0; k < spec.d; ++k) e[k] = f.site[k];
            size_t row = (f.type == 'X' ? 0 : q) + size_t(f.qubit - 1);
            m(row, j) += LaurentPoly::monomial(spec.p, spec.d, e, f.power % spec.p);
        }
    return m;
}

Unitary pauli_to_unitary(const PauliSpec& spec) {
    PolyMatrix m = pauli_matrix(spec);
    if (!check_lambda(m, -1))
        throw DomainError("Pauli images violate the commutation relations: U^dag lambda U != lambda");
    return Unitary{Flavor::LambdaMinus, m};
}

PauliSpec unitary_to_pauli(const PolyMatrix& u) {
    if (!even_square(u)) throw DomainError("unitary must be a square matrix of even size");
    PauliSpec spec;
    spec.p = u.p();
    spec.d = u.nvars();
    spec.q = u.rows() / 2;
    spec.images.resize(2 * spec.q);
    for (size_t j = 0; j < 2 * spec.q; ++j)
        for (size_t i = 0; i < 2 * spec.q; ++i)
            for (const Term& t : u(i, j).terms()) {
                PauliFactor f;
                f.type = i < spec.q ? 'X' : 'Z';
                f.qubit = int(i % spec.q) + 1;
                f.site.assign(t.e.begin(), t.e.begin() + spec.d);
                f.power = t.c;
                spec.images[j].push_back(f);
            }
    return spec;
}

bool same_pauli(const PauliSpec& a, const PauliSpec& b) {
    return a.p == b.p && a.d == b.d && a.q == b.q && pauli_matrix(a) == pauli_matrix(b);
}

// ---- time reversal ----

static Circuit single(const RingCtx& ctx, size_t q, const PolyMatrix& m) {
    Circuit c{ctx, -1, q, {}};
    if (!m.is_identity()) c.gates.push_back(recognize_gate(m, -1));
    return c;
}

static PolyMatrix diag_const_of(const PolyMatrix& half, size_t q) {
    // constant terms of diag(h^dag eta h) for a 2q x q block h
    PolyMatrix r(half.ctx(), q, q);
    for (size_t j = 0; j < q; ++j) {
        LaurentPoly acc = half.zero();
        for (size_t i = 0; i < q; ++i) acc += involute(half(i, j)) * half(q + i, j);
        r(j, j) = r.scalar(const_term(acc));
    }
    return r;
}

RealNormalization normalize_real(const PolyMatrix& v) {
    if (v.p() != 2) throw DomainError("time-reversal normalization needs p = 2");
    if (!check_lambda(v, -1)) throw DomainError("input is not lambda-unitary: U^dag lambda U != lambda");
    size_t q = v.rows() / 2;
    const RingCtx& ctx = v.ctx();
    PolyMatrix uv = substitute_all_one(v).retyped(ctx);
    PolyMatrix w = inverse(uv) * v;
    PolyMatrix pm = diag_const_of(w.block(0, 0, 2 * q, q), q);
    PolyMatrix zp = gen_Z(pm, -1);
    PolyMatrix w2 = zp * w;
    PolyMatrix fm = diag_const_of(w2.block(0, q, 2 * q, q), q);
    PolyMatrix zf = gen_Zdag(fm, -1);
    PolyMatrix u = w2 * zf; // Z(F)^dag is its own inverse over F_2
    QCA_CHECK(check_eta(u, -1), "time-reversal output fails the eta check");
    RealNormalization r{u, single(ctx, q, uv), single(ctx, q, zf)};
    if (!pm.is_zero()) r.left.gates.push_back(Gate{Gate::Kind::Z, 0, pm});
    QCA_CHECK(eval_circuit(r.left) * u * eval_circuit(r.right) == v, "time-reversal recomposition");
    return r;
}

// ---- one-variable decomposition ----

namespace {

int32_t deg(const LaurentPoly& x) { return x.nvars() == 0 ? 0 : x.span_degree(); }

struct Decomposer {
    PolyMatrix u;
    size_t q;
    int s = -1;
    Circuit out;

    void apply(const Gate& g, const Gate& inv) {
        u = eval_gate(g, u.ctx(), q, s) * u;
        out.gates.push_back(inv);
    }
    void row_op_x(size_t i, size_t j, const LaurentPoly& t) { // top row_i += t row_j
        PolyMatrix a = PolyMatrix::identity(u.ctx(), q), ai = a;
        a(i, j) = t;
        ai(i, j) = -t;
        apply(Gate{Gate::Kind::X, 0, a}, Gate{Gate::Kind::X, 0, ai});
    }
    void swap_x(size_t i, size_t j) {
        PolyMatrix a = PolyMatrix::identity(u.ctx(), q);
        a(i, i) = a.zero();
        a(j, j) = a.zero();
        a(i, j) = a.scalar(1);
        a(j, i) = a.scalar(1);
        apply(Gate{Gate::Kind::X, 0, a}, Gate{Gate::Kind::X, 0, a});
    }
    void hinv(size_t slot) { apply(Gate{Gate::Kind::Hinv, slot, {}}, Gate{Gate::Kind::H, slot, {}}); }
    void z_op(const PolyMatrix& th) { apply(Gate{Gate::Kind::Z, 0, th}, Gate{Gate::Kind::Z, 0, -th}); }
    void zdag_op(const PolyMatrix& th) { apply(Gate{Gate::Kind::Zdag, 0, th}, Gate{Gate::Kind::Zdag, 0, -th}); }

    // Euclid on the X-part of column k over active slots; leaves gcd at row k.
    void euclid_top(size_t k) {
        for (;;) {
            size_t piv = q;
            size_t nz = 0;
            for (size_t j = k; j < q; ++j) {
                if (u(j, k).is_zero()) continue;
                ++nz;
                if (piv == q || deg(u(j, k)) < deg(u(piv, k))) piv = j;
            }
            if (piv == q) return;
            if (nz == 1) {
                if (piv != k) swap_x(piv, k);
                return;
            }
            for (size_t j = k; j < q; ++j) {
                if (j == piv || u(j, k).is_zero()) continue;
                LaurentPoly qt, rem;
                laurent_divrem(u(j, k), u(piv, k), qt, rem);
                row_op_x(j, piv, -qt);
            }
        }
    }

    void column_k(size_t k) {
        for (;;) {
            bool top_zero = true;
            for (size_t j = k; j < q; ++j) top_zero = top_zero && u(j, k).is_zero();
            if (top_zero) {
                for (size_t j = k; j < q; ++j)
                    if (!u(q + j, k).is_zero()) hinv(j);
                continue;
            }
            euclid_top(k);
            bool any = false;
            for (size_t j = k + 1; j < q; ++j)
                if (!u(q + j, k).is_zero()) {
                    hinv(j);
                    any = true;
                }
            if (!any) break;
        }
        // Degree reduction in slot k on (a, c).
        while (!u(q + k, k).is_zero()) {
            const LaurentPoly& a = u(k, k);
            const LaurentPoly& c = u(q + k, k);
            if (a.is_zero() || deg(c) < deg(a)) {
                hinv(k);
                continue;
            }
            uint32_t p = u.p();
            uint32_t r = fp_mul(c.terms().back().c, fp_inv(a.terms().back().c, p), p);
            LaurentPoly d(p, u.nvars());
            if (u.nvars() == 0) {
                d = LaurentPoly::constant(p, 0, r);
            } else {
                int32_t m = c.terms().back().e[0] - a.terms().back().e[0];
                QCA_CHECK(m >= 0, "degree reduction exponent");
                d = LaurentPoly::variable(p, 1, 0, m).scaled(r);
                if (m > 0) d += LaurentPoly::variable(p, 1, 0, -m).scaled(r);
            }
            PolyMatrix th(u.ctx(), q, q);
            th(k, k) = -d;
            int32_t before = deg(c);
            z_op(th);
            QCA_CHECK(u(q + k, k).is_zero() || deg(u(q + k, k)) < before, "degree reduction did not reduce");
        }
        if (!u(k, k).is_unit()) throw DomainError("first column is not unimodular; input is not unitary");
        if (!u(k, k).is_one()) {
            PolyMatrix a = PolyMatrix::identity(u.ctx(), q), ai = a;
            a(k, k) = u(k, k).unit_inverse();
            ai(k, k) = u(k, k);
            apply(Gate{Gate::Kind::X, 0, a}, Gate{Gate::Kind::X, 0, ai});
        }
    }

    void column_qk(size_t k) {
        QCA_CHECK(u(q + k, q + k).is_one(), "unitarity forces d_kk = 1");
        for (size_t j = k + 1; j < q; ++j) {
            if (u(q + j, q + k).is_zero()) continue;
            row_op_x(k, j, involute(u(q + j, q + k)));
        }
        for (size_t j = k + 1; j < q; ++j) {
            if (u(j, q + k).is_zero()) continue;
            LaurentPoly t = -u(j, q + k);
            PolyMatrix th(u.ctx(), q, q);
            th(j, k) = t;
            th(k, j) = involute(t);
            zdag_op(th);
        }
        if (!u(k, q + k).is_zero()) {
            PolyMatrix th(u.ctx(), q, q);
            th(k, k) = -u(k, q + k);
            zdag_op(th);
        }
    }

    void run() {
        for (size_t k = 0; k < q; ++k) {
            column_k(k);
            column_qk(k);
            for (size_t j = 0; j < 2 * q; ++j) {
                bool ok = (j == k ? u(k, j).is_one() : u(k, j).is_zero()) &&
                          (j == q + k ? u(q + k, j).is_one() : u(q + k, j).is_zero());
                if (!ok) throw DomainError("slot did not reduce to the identity; input is not lambda-unitary");
            }
        }
        QCA_CHECK(u.is_identity(), "decomposition residual");
    }
};

} // namespace

static Circuit merge_x(const Circuit& c) {
    Circuit r{c.ctx, c.sign, c.q, {}};
    for (const Gate& g : c.gates) {
        if (g.kind == Gate::Kind::X && !r.gates.empty() && r.gates.back().kind == Gate::Kind::X) {
            r.gates.back().mat = r.gates.back().mat * g.mat;
            if (r.gates.back().mat.is_identity()) r.gates.pop_back();
            continue;
        }
        r.gates.push_back(g);
    }
    return r;
}

Circuit decompose_1d(const PolyMatrix& u) {
    if (u.nvars() > 1) throw UnsupportedDimension("decompose_1d needs at most one variable");
    if (!check_lambda(u, -1)) throw DomainError("input is not lambda- unitary: U^dag lambda U != lambda");
    size_t q = u.rows() / 2;
    Decomposer d{u, q, -1, Circuit{u.ctx(), -1, q, {}}};
    d.run();
    Circuit c = merge_x(d.out);
    QCA_CHECK(eval_circuit(c) == u, "decomposition round trip");
    return c;
}

} // namespace qca
