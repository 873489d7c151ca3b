#include "qca/forms.hpp"

#include "qca/pid.hpp"

namespace qca {

static void check_sign(int s) {
    if (s != 1 && s != -1) throw DomainError("form sign must be +1 or -1");
}

Form make_quadratic(const PolyMatrix& m, int sign) {
    check_sign(sign);
    if (!m.square()) throw DomainError("form matrix must be square");
    return Form{FormKind::Quadratic, sign, m};
}

Form make_hermitian(const PolyMatrix& m, int sign) {
    check_sign(sign);
    if (!m.square()) throw DomainError("form matrix must be square");
    if (!is_hermitian(m, sign))
        throw DomainError(std::string("matrix is not hermitian: M^dag != ") + (sign > 0 ? "+M" : "-M"));
    return Form{FormKind::Hermitian, sign, m};
}

PolyMatrix eta_matrix(const RingCtx& ctx, size_t q) {
    PolyMatrix m(ctx, 2 * q, 2 * q);
    for (size_t i = 0; i < q; ++i) m(i, q + i) = m.scalar(1);
    return m;
}

PolyMatrix lambda_matrix(const RingCtx& ctx, size_t q, int s) {
    PolyMatrix m(ctx, 2 * q, 2 * q);
    for (size_t i = 0; i < q; ++i) {
        m(i, q + i) = m.scalar(1);
        m(q + i, i) = m.scalar(s);
    }
    return m;
}

Form eta_form(const RingCtx& ctx, size_t q, int s) { return make_quadratic(eta_matrix(ctx, q), s); }
Form lambda_form(const RingCtx& ctx, size_t q, int s) { return Form{FormKind::Hermitian, s, lambda_matrix(ctx, q, s)}; }

bool is_hermitian(const PolyMatrix& m, int s) {
    if (!m.square()) return false;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = i; j < m.cols(); ++j) {
            LaurentPoly t = involute(m(j, i));
            if (s < 0) t = -t;
            if (t != m(i, j)) return false;
        }
    return true;
}

static PolyMatrix assoc_matrix(const PolyMatrix& m, int s) {
    PolyMatrix a = adjoint(m);
    return s > 0 ? m + a : m - a;
}

Form assoc(const Form& phi) {
    if (phi.kind == FormKind::Hermitian) return phi;
    return Form{FormKind::Hermitian, phi.sign, assoc_matrix(phi.m, phi.sign)};
}

bool is_nonsingular(const Form& f) { return determinant(assoc(f).m).is_unit(); }

bool is_even(const Form& delta) {
    if (delta.kind == FormKind::Quadratic) return true;
    if (delta.m.p() != 2) return true;
    for (size_t i = 0; i < delta.dim(); ++i)
        if (const_term(delta.m(i, i)) != 0) return false;
    return true;
}

bool equivalent(const Form& phi, const Form& xi) {
    if (phi.dim() != xi.dim() || phi.ctx() != xi.ctx()) throw DomainError("forms of different shape or ring");
    if (phi.sign != xi.sign) throw DomainError("forms of different sign");
    if (phi.kind == FormKind::Hermitian || xi.kind == FormKind::Hermitian) return phi.m == xi.m;
    PolyMatrix d = phi.m - xi.m;
    if (!assoc_matrix(d, phi.sign).is_zero()) return false;
    if (d.p() == 2)
        for (size_t i = 0; i < d.rows(); ++i)
            if (const_term(d(i, i)) != 0) return false;
    return true;
}

bool is_sublagrangian(const Form& f, const PolyMatrix& k) {
    if (k.rows() != f.dim()) throw DomainError("sublagrangian generators have the wrong length");
    if (k.cols() == 0) return true;
    if (k.nvars() <= 1) {
        try {
            if (!is_direct_summand(k)) return false;
        } catch (const UnsupportedDimension&) {
            throw;
        } catch (const DomainError&) {
            return false; // dependent columns
        }
    }
    Form r = congruent(f, k);
    if (f.kind == FormKind::Hermitian) return r.m.is_zero();
    return equivalent(r, make_quadratic(PolyMatrix(k.ctx(), k.cols(), k.cols()), f.sign));
}

Form congruent(const Form& f, const PolyMatrix& e) { return Form{f.kind, f.sign, adjoint(e) * f.m * e}; }

Form dsum(const Form& a, const Form& b) {
    if (a.kind != b.kind || a.sign != b.sign) throw DomainError("direct sum of forms of different kind or sign");
    return Form{a.kind, a.sign, form_dsum(a.m, b.m)};
}

Form negate(const Form& f) { return Form{f.kind, f.sign, -f.m}; }

PolyMatrix split(const PolyMatrix& d, int r) {
    if (!is_hermitian(d, r)) throw DomainError("splitting needs a hermitian matrix");
    uint32_t p = d.p();
    if (p != 2) return d * d.scalar(fp_inv(2, p));
    PolyMatrix x(d.ctx(), d.rows(), d.cols());
    for (size_t i = 0; i < d.rows(); ++i) {
        for (size_t j = i + 1; j < d.cols(); ++j) x(i, j) = d(i, j);
        if (const_term(d(i, i)) != 0) throw DomainError("hermitian matrix over F_2 is not even");
        LaurentPoly half(p, d.nvars());
        Exps zero{};
        zero.fill(0);
        for (const Term& t : d(i, i).terms())
            if (zero < t.e) half.mutable_terms().push_back(t); // exponent vector lexicographically positive
        x(i, i) = half;
    }
    return x;
}

WittNegative witt_negative(const Form& phi) {
    if (phi.kind != FormKind::Quadratic) throw DomainError("witt_negative expects a quadratic form");
    int s = phi.sign;
    PolyMatrix delta = assoc(phi).m;
    if (!determinant(delta).is_unit()) throw DomainError("form is singular");
    PolyMatrix di = inverse(delta);
    // Sandwiching phi by the inverse gives a splitting of di that also keeps
    // the diagonal constant terms right when p = 2.
    PolyMatrix psi = di * phi.m * di;
    QCA_CHECK(assoc_matrix(psi, s) == di, "psi does not split the inverse form");
    size_t n = phi.dim();
    PolyMatrix id = PolyMatrix::identity(phi.ctx(), n);
    PolyMatrix lower = adjoint(psi) * psi.scalar(-s);
    PolyMatrix t = block2(id, psi, id, lower);
    PolyMatrix pd = psi * delta;
    PolyMatrix t_inv = block2(id - pd, pd, delta, -delta);
    QCA_CHECK((t * t_inv).is_identity(), "witt_negative inverse");
    Form both = dsum(phi, negate(phi));
    QCA_CHECK(equivalent(congruent(both, t), eta_form(phi.ctx(), n, s)), "witt_negative postcondition");
    return WittNegative{make_quadratic(psi, s), t, t_inv};
}

Form s_map(const Form& phi) {
    if (phi.kind != FormKind::Quadratic) throw DomainError("s_map expects a quadratic form");
    return assoc(phi);
}

Form s_section(const Form& delta) {
    if (delta.kind != FormKind::Hermitian) throw DomainError("s_section expects a hermitian form");
    if (!is_even(delta)) throw DomainError("hermitian form is not even");
    Form q = make_quadratic(split(delta.m, delta.sign), delta.sign);
    QCA_CHECK(assoc(q).m == delta.m, "s_section round trip");
    return q;
}

// ---- Witt group of F_p ----

WittClass::Group witt_group(uint32_t p, int sign, FormKind kind) {
    using G = WittClass::Group;
    if (p == 2) return kind == FormKind::Quadratic ? G::Z2 : G::Zero;
    if (sign < 0) return G::Zero;
    return p % 4 == 3 ? G::Z4 : G::Z2xZ2;
}

std::string group_name(WittClass::Group g) {
    switch (g) {
    case WittClass::Group::Zero: return "0";
    case WittClass::Group::Z2: return "Z/2";
    case WittClass::Group::Z4: return "Z/4";
    case WittClass::Group::Z2xZ2: return "Z/2+Z/2";
    }
    return "?";
}

WittClass witt_zero(uint32_t p, int sign, FormKind kind) {
    WittClass w;
    w.p = p;
    w.sign = sign;
    w.kind = kind;
    w.group = witt_group(p, sign, kind);
    return w;
}

static void reduce(WittClass& w) {
    using G = WittClass::Group;
    switch (w.group) {
    case G::Zero: w.a = w.b = 0; break;
    case G::Z2: w.a = ((w.a % 2) + 2) % 2; w.b = 0; break;
    case G::Z4: w.a = ((w.a % 4) + 4) % 4; w.b = 0; break;
    case G::Z2xZ2:
        w.a = ((w.a % 2) + 2) % 2;
        w.b = ((w.b % 2) + 2) % 2;
        break;
    }
}

WittClass WittClass::operator+(const WittClass& o) const {
    if (group != o.group || p != o.p) throw DomainError("adding Witt classes of different groups");
    WittClass r = *this;
    r.a += o.a;
    r.b += o.b;
    reduce(r);
    return r;
}

WittClass WittClass::operator-() const {
    WittClass r = *this;
    r.a = -a;
    r.b = -b;
    reduce(r);
    return r;
}

WittClass WittClass::times(int n) const {
    WittClass r = *this;
    r.a = a * n;
    r.b = b * n;
    reduce(r);
    return r;
}

int WittClass::order() const {
    int n = 1;
    while (!times(n).is_zero()) ++n;
    return n;
}

std::string WittClass::value_string() const {
    if (group == Group::Z2xZ2) return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return std::to_string(a);
}

std::string WittClass::to_string() const {
    if (group == Group::Zero) return "0";
    return value_string() + " in " + group_name(group);
}

static uint32_t bil(const FpMat& b, const std::vector<uint32_t>& u, const std::vector<uint32_t>& v) {
    uint64_t s = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        if (!u[i]) continue;
        for (size_t j = 0; j < v.size(); ++j) s += uint64_t(u[i]) * b(i, j) * v[j];
    }
    return uint32_t(s % b.p);
}

// Arf invariant of a nonsingular quadratic form over F_2.
static int arf(const FpMat& phi) {
    size_t n = phi.rows;
    FpMat b(2, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) b(i, j) = (phi(i, j) + phi(j, i)) % 2;
    std::vector<std::vector<uint32_t>> vs;
    for (size_t i = 0; i < n; ++i) {
        std::vector<uint32_t> e(n, 0);
        e[i] = 1;
        vs.push_back(e);
    }
    int total = 0;
    while (!vs.empty()) {
        std::vector<uint32_t> e = vs.front();
        vs.erase(vs.begin());
        bool all_zero = true;
        for (auto x : e) all_zero = all_zero && x == 0;
        if (all_zero) continue;
        size_t fi = vs.size();
        for (size_t k = 0; k < vs.size(); ++k)
            if (bil(b, e, vs[k])) {
                fi = k;
                break;
            }
        QCA_CHECK(fi < vs.size(), "symplectic partner missing; form singular");
        std::vector<uint32_t> f = vs[fi];
        vs.erase(vs.begin() + long(fi));
        total ^= int(bil(phi, e, e) & bil(phi, f, f));
        for (auto& w : vs) {
            uint32_t wf = bil(b, w, f), we = bil(b, w, e);
            for (size_t i = 0; i < n; ++i) w[i] = (w[i] + wf * e[i] + we * f[i]) % 2;
        }
    }
    return total;
}

// Congruent diagonalization of a symmetric nonsingular matrix over odd F_p.
static std::vector<uint32_t> diagonalize(FpMat s) {
    uint32_t p = s.p;
    size_t n = s.rows;
    auto add_row_col = [&](size_t dst, size_t src, uint32_t f) { // dst += f * src, both sides
        for (size_t k = 0; k < n; ++k) s(dst, k) = fp_add(s(dst, k), qca::fp_mul(f, s(src, k), p), p);
        for (size_t k = 0; k < n; ++k) s(k, dst) = fp_add(s(k, dst), qca::fp_mul(f, s(k, src), p), p);
    };
    for (size_t i = 0; i < n; ++i) {
        if (s(i, i) == 0) {
            size_t j = i + 1;
            while (j < n && s(j, j) == 0) ++j;
            if (j < n) {
                for (size_t k = 0; k < n; ++k) std::swap(s(i, k), s(j, k));
                for (size_t k = 0; k < n; ++k) std::swap(s(k, i), s(k, j));
            } else {
                j = i + 1;
                while (j < n && s(i, j) == 0) ++j;
                QCA_CHECK(j < n, "singular symmetric matrix in diagonalization");
                add_row_col(i, j, 1); // s_ii becomes 2 s_ij
            }
        }
        QCA_CHECK(s(i, i) != 0, "diagonalization pivot");
        uint32_t inv = fp_inv(s(i, i), p);
        for (size_t k = i + 1; k < n; ++k)
            if (s(k, i)) add_row_col(k, i, fp_neg(qca::fp_mul(s(k, i), inv, p), p));
    }
    std::vector<uint32_t> d(n);
    for (size_t i = 0; i < n; ++i) d[i] = s(i, i);
    return d;
}

WittClass witt_class_f(const Form& f) {
    if (f.m.nvars() != 0) throw DomainError("witt_class_f needs a form without variables");
    uint32_t p = f.m.p();
    if (!is_nonsingular(f)) throw DomainError("form is singular");
    WittClass w = witt_zero(p, f.sign, f.kind);
    if (p == 2) {
        if (f.kind == FormKind::Hermitian) {
            if (!is_even(f)) throw DomainError("hermitian form over F_2 is not even");
            return w;
        }
        w.a = arf(to_fp(f.m));
        return w;
    }
    if (f.sign < 0) return w;
    // Symmetric matrix of the underlying quadratic form: phi(v,v) = v^T S v.
    PolyMatrix sym = f.kind == FormKind::Quadratic ? assoc(f).m : f.m;
    FpMat s = to_fp(sym * sym.scalar(fp_inv(2, p)));
    int n1 = 0, ng = 0;
    for (uint32_t x : diagonalize(s)) (fp_is_square(x, p) ? n1 : ng)++;
    if (p % 4 == 3) {
        w.a = n1 + 3 * ng;
    } else {
        w.a = n1;
        w.b = ng;
    }
    reduce(w);
    return w;
}

WittClass witt_class_1var(const Form& f) {
    if (f.m.nvars() != 1) throw DomainError("witt_class_1var needs exactly one variable");
    if (!is_nonsingular(f)) throw DomainError("form is singular");
    Form e{f.kind, f.sign, substitute_one(f.m, f.ctx().vars[0])};
    return witt_class_f(e);
}

WittClass witt_class(const Form& f) {
    if (f.m.nvars() == 0) return witt_class_f(f);
    if (f.m.nvars() == 1) return witt_class_1var(f);
    throw UnsupportedDimension("Witt class needs a base ring with at most one variable");
}

static bool isotropic(const Form& f, const PolyMatrix& v) {
    Form r = congruent(f, v);
    if (f.kind == FormKind::Hermitian) return r.m.is_zero();
    return equivalent(r, make_quadratic(PolyMatrix(f.ctx(), 1, 1), f.sign));
}

std::optional<PolyMatrix> find_isotropic(const Form& f) {
    if (f.m.nvars() != 0) throw DomainError("isotropic search needs a form without variables");
    size_t n = f.dim();
    size_t k = std::min<size_t>(n, 3);
    uint32_t p = f.m.p();
    uint64_t total = 1;
    for (size_t i = 0; i < k; ++i) total *= p;
    for (uint64_t code = 1; code < total; ++code) {
        PolyMatrix v(f.ctx(), n, 1);
        uint64_t c = code;
        for (size_t i = 0; i < k; ++i) {
            v(i, 0) = v.scalar(int64_t(c % p));
            c /= p;
        }
        if (isotropic(f, v)) return v;
    }
    return std::nullopt;
}

Form anisotropic_core(const Form& f) {
    Form cur = f;
    for (;;) {
        if (cur.dim() == 0) return cur;
        auto v = find_isotropic(cur);
        if (!v) return cur;
        PolyMatrix b = assoc(cur).m;
        PolyMatrix row = adjoint(*v) * b;
        size_t j = 0;
        while (j < row.cols() && row(0, j).is_zero()) ++j;
        QCA_CHECK(j < row.cols(), "isotropic vector in the radical; form singular");
        PolyMatrix w(cur.ctx(), cur.dim(), 1);
        w(j, 0) = w.scalar(1);
        PolyMatrix c = kernel(vstack(row, adjoint(w) * b));
        cur = congruent(cur, c);
    }
}

} // namespace qca
