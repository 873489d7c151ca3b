#include "qca/ring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace qca {

uint32_t fp_pow(uint32_t a, uint64_t e, uint32_t p) {
    uint64_t r = 1 % p, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return uint32_t(r);
}

uint32_t fp_inv(uint32_t a, uint32_t p) {
    if (a % p == 0) throw NotInvertible("zero has no inverse mod " + std::to_string(p));
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
        int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (t < 0) t += p;
    return uint32_t(t);
}

uint32_t fp_from_int(int64_t v, uint32_t p) {
    int64_t r = v % int64_t(p);
    if (r < 0) r += p;
    return uint32_t(r);
}

bool is_prime(uint64_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool fp_is_square(uint32_t a, uint32_t p) { return fp_pow(a, (p - 1) / 2, p) == 1; }

uint32_t smallest_nonresidue(uint32_t p) {
    for (uint32_t g = 2; g < p; ++g)
        if (!fp_is_square(g, p)) return g;
    throw DomainError("no quadratic nonresidue mod " + std::to_string(p));
}

// ---- context ----

int RingCtx::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return int(i);
    return -1;
}

int RingCtx::require_var(const std::string& name) const {
    int i = var_index(name);
    if (i < 0) throw DomainError("unknown variable '" + name + "'");
    return i;
}

static bool valid_name(const std::string& s) {
    if (s.empty() || !(std::isalpha((unsigned char)s[0]) || s[0] == '_')) return false;
    for (char ch : s)
        if (!(std::isalnum((unsigned char)ch) || ch == '_' || ch == '\'')) return false;
    return true;
}

RingCtx make_ctx(uint64_t p, std::vector<std::string> vars) {
    if (p > 0x7fffffffULL || !is_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not a supported prime");
    if (vars.size() > size_t(kMaxVars)) throw DomainError("too many variables");
    std::set<std::string> seen;
    for (auto& v : vars) {
        if (!valid_name(v)) throw DomainError("invalid variable name '" + v + "'");
        if (!seen.insert(v).second) throw DomainError("duplicate variable name '" + v + "'");
    }
    return RingCtx{uint32_t(p), std::move(vars)};
}

RingCtx ctx_with_var(const RingCtx& c, const std::string& name) {
    if (c.var_index(name) >= 0) throw DomainError("variable '" + name + "' already in use");
    auto v = c.vars;
    v.push_back(name);
    return make_ctx(c.p, v);
}

RingCtx ctx_without_var(const RingCtx& c, const std::string& name) {
    int i = c.require_var(name);
    auto v = c.vars;
    v.erase(v.begin() + i);
    return RingCtx{c.p, v};
}

RingCtx ctx_renamed(const RingCtx& c, const std::string& from, const std::string& to) {
    int i = c.require_var(from);
    auto v = c.vars;
    v[i] = to;
    return make_ctx(c.p, v);
}

// ---- polynomial ----

static Exps zero_exps() {
    Exps e{};
    e.fill(0);
    return e;
}

LaurentPoly LaurentPoly::constant(uint32_t p, int nvars, int64_t c) {
    LaurentPoly r(p, nvars);
    uint32_t v = fp_from_int(c, p);
    if (v) r.t_.push_back({zero_exps(), v});
    return r;
}

LaurentPoly LaurentPoly::monomial(uint32_t p, int nvars, const Exps& e, uint32_t c) {
    LaurentPoly r(p, nvars);
    c %= p;
    if (c) r.t_.push_back({e, c});
    return r;
}

LaurentPoly LaurentPoly::variable(uint32_t p, int nvars, int i, int32_t power) {
    Exps e = zero_exps();
    e[i] = power;
    return monomial(p, nvars, e, 1);
}

bool LaurentPoly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].e == zero_exps()); }
bool LaurentPoly::is_one() const { return t_.size() == 1 && t_[0].c == 1 && t_[0].e == zero_exps(); }

uint32_t LaurentPoly::coeff(const Exps& e) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), e, [](const Term& t, const Exps& x) { return t.e < x; });
    return (it != t_.end() && it->e == e) ? it->c : 0;
}

void LaurentPoly::normalize() {
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return a.e < b.e; });
    size_t w = 0;
    for (size_t i = 0; i < t_.size();) {
        Exps e = t_[i].e;
        uint64_t s = 0;
        for (; i < t_.size() && t_[i].e == e; ++i) s += t_[i].c;
        uint32_t c = uint32_t(s % p_);
        if (c) t_[w++] = {e, c};
    }
    t_.resize(w);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r(p_, n_);
    r.t_.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && t_[i].e < o.t_[j].e)) {
            r.t_.push_back(t_[i++]);
        } else if (i == t_.size() || o.t_[j].e < t_[i].e) {
            r.t_.push_back(o.t_[j++]);
        } else {
            uint32_t c = fp_add(t_[i].c, o.t_[j].c, p_);
            if (c) r.t_.push_back({t_[i].e, c});
            ++i;
            ++j;
        }
    }
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.t_) t.c = fp_neg(t.c, p_);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r(p_, n_);
    if (t_.empty() || o.t_.empty()) return r;
    if (o.t_.size() == 1 && o.t_[0].e == zero_exps()) return scaled(o.t_[0].c);
    if (t_.size() == 1 && t_[0].e == zero_exps()) return o.scaled(t_[0].c);
    r.t_.reserve(t_.size() * o.t_.size());
    for (const auto& a : t_)
        for (const auto& b : o.t_) {
            Term t;
            for (int k = 0; k < kMaxVars; ++k) t.e[k] = a.e[k] + b.e[k];
            t.c = fp_mul(a.c, b.c, p_);
            r.t_.push_back(t);
        }
    r.normalize();
    return r;
}

LaurentPoly LaurentPoly::scaled(uint32_t c) const {
    LaurentPoly r(p_, n_);
    c %= p_;
    if (!c) return r;
    r.t_ = t_;
    for (auto& t : r.t_) t.c = fp_mul(t.c, c, p_);
    return r;
}

LaurentPoly LaurentPoly::shifted(const Exps& e) const {
    LaurentPoly r = *this;
    for (auto& t : r.t_)
        for (int k = 0; k < kMaxVars; ++k) t.e[k] += e[k];
    return r; // order preserved: translation is monotone for lexicographic order
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (size_t i = 0; i < t_.size(); ++i)
        if (t_[i].e != o.t_[i].e || t_[i].c != o.t_[i].c) return false;
    return true;
}

LaurentPoly LaurentPoly::unit_inverse() const {
    if (t_.size() != 1) throw NotInvertible("polynomial is not a unit");
    Exps e;
    for (int k = 0; k < kMaxVars; ++k) e[k] = -t_[0].e[k];
    return monomial(p_, n_, e, fp_inv(t_[0].c, p_));
}

int32_t LaurentPoly::min_deg(int var) const {
    if (t_.empty()) return 0;
    int32_t m = t_[0].e[var];
    for (auto& t : t_) m = std::min(m, t.e[var]);
    return m;
}

int32_t LaurentPoly::max_deg(int var) const {
    if (t_.empty()) return 0;
    int32_t m = t_[0].e[var];
    for (auto& t : t_) m = std::max(m, t.e[var]);
    return m;
}

bool LaurentPoly::divides_into(const LaurentPoly& b, LaurentPoly& quotient) const {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    quotient = LaurentPoly(p_, n_);
    if (is_zero()) return true;
    if (b.is_unit()) {
        quotient = *this * b.unit_inverse();
        return true;
    }
    // Quotient exponents are confined to a box; leading terms in lexicographic
    // order strictly decrease, so the loop terminates.
    Exps lo, hi;
    for (int k = 0; k < n_; ++k) {
        lo[k] = min_deg(k) - b.min_deg(k);
        hi[k] = max_deg(k) - b.max_deg(k);
        if (lo[k] > hi[k]) return false;
    }
    LaurentPoly rem = *this;
    const Term& lb = b.t_.back();
    uint32_t inv_lb = fp_inv(lb.c, p_);
    std::vector<Term> q;
    while (!rem.is_zero()) {
        const Term& lr = rem.t_.back();
        Term t;
        t.e.fill(0);
        for (int k = 0; k < n_; ++k) {
            t.e[k] = lr.e[k] - lb.e[k];
            if (t.e[k] < lo[k] || t.e[k] > hi[k]) return false;
        }
        t.c = fp_mul(lr.c, inv_lb, p_);
        q.push_back(t);
        LaurentPoly step = b.shifted(t.e).scaled(t.c);
        rem = rem - step;
    }
    quotient.t_ = std::move(q);
    quotient.normalize();
    return true;
}

LaurentPoly LaurentPoly::exact_div(const LaurentPoly& b) const {
    LaurentPoly q;
    if (!divides_into(b, q)) throw NotInvertible("inexact polynomial division");
    return q;
}

LaurentPoly LaurentPoly::coeff_in(int var, int32_t k) const {
    LaurentPoly r(p_, n_);
    for (auto& t : t_)
        if (t.e[var] == k) {
            Term u = t;
            u.e[var] = 0;
            r.t_.push_back(u);
        }
    r.normalize();
    return r;
}

LaurentPoly LaurentPoly::with_nvars(int n) const {
    LaurentPoly r = *this;
    r.n_ = n;
    for (auto& t : r.t_)
        for (int k = n; k < kMaxVars; ++k)
            if (t.e[k] != 0) throw InternalError("narrowing a polynomial that uses a dropped variable");
    return r;
}

bool LaurentPoly::univariate() const { return n_ <= 1; }

int32_t LaurentPoly::span_degree() const {
    if (t_.empty()) return -1;
    if (n_ == 0) return 0;
    return t_.back().e[0] - t_.front().e[0];
}

LaurentPoly involute(const LaurentPoly& r) {
    LaurentPoly o = r;
    for (auto& t : o.mutable_terms())
        for (int k = 0; k < kMaxVars; ++k) t.e[k] = -t.e[k];
    o.normalize();
    return o;
}

uint32_t const_term(const LaurentPoly& r) { return r.coeff(zero_exps()); }

uint32_t augment(const LaurentPoly& r) {
    uint64_t s = 0;
    for (auto& t : r.terms()) s += t.c;
    return uint32_t(s % r.p());
}

LaurentPoly substitute_one(const LaurentPoly& r, int var) {
    LaurentPoly o(r.p(), r.nvars() - 1);
    for (auto t : r.terms()) {
        for (int k = var; k + 1 < kMaxVars; ++k) t.e[k] = t.e[k + 1];
        t.e[kMaxVars - 1] = 0;
        o.mutable_terms().push_back(t);
    }
    o.normalize();
    return o;
}

LaurentPoly embed_poly(const LaurentPoly& r) {
    if (r.nvars() >= kMaxVars) throw DomainError("too many variables");
    return r.with_nvars(r.nvars() + 1);
}

// ---- univariate Euclid ----

static void to_dense(const LaurentPoly& a, int32_t& lo, std::vector<uint32_t>& c) {
    lo = a.terms().front().e[0];
    int32_t hi = a.terms().back().e[0];
    c.assign(size_t(hi - lo + 1), 0);
    for (auto& t : a.terms()) c[size_t(t.e[0] - lo)] = t.c;
}

static LaurentPoly from_dense(uint32_t p, int nvars, int32_t lo, const std::vector<uint32_t>& c) {
    LaurentPoly r(p, nvars);
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i]) {
            Exps e = zero_exps();
            if (nvars) e[0] = lo + int32_t(i);
            r.mutable_terms().push_back({e, c[i]});
        }
    return r; // already sorted by exponent
}

void laurent_divrem(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& q, LaurentPoly& r) {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    if (a.nvars() > 1) throw UnsupportedDimension("Euclidean division needs at most one variable");
    uint32_t p = a.p();
    int n = a.nvars();
    if (a.is_zero()) {
        q = LaurentPoly(p, n);
        r = LaurentPoly(p, n);
        return;
    }
    if (n == 0) {
        q = a * b.unit_inverse();
        r = LaurentPoly(p, n);
        return;
    }
    int32_t alo, blo;
    std::vector<uint32_t> ac, bc;
    to_dense(a, alo, ac);
    to_dense(b, blo, bc);
    size_t db = bc.size() - 1;
    if (ac.size() - 1 < db) {
        q = LaurentPoly(p, n);
        r = a;
        return;
    }
    uint32_t inv = fp_inv(bc.back(), p);
    std::vector<uint32_t> qc(ac.size() - db, 0);
    for (size_t i = ac.size(); i-- > db;) {
        uint32_t c = ac[i];
        if (!c) continue;
        uint32_t f = fp_mul(c, inv, p);
        qc[i - db] = f;
        for (size_t j = 0; j <= db; ++j) ac[i - db + j] = fp_sub(ac[i - db + j], fp_mul(f, bc[j], p), p);
    }
    q = from_dense(p, n, alo - blo, qc);
    ac.resize(db);
    r = from_dense(p, n, alo, ac);
}

LaurentPoly normalizing_unit(const LaurentPoly& a) {
    if (a.is_zero()) throw DomainError("zero has no normalizing unit");
    Exps e;
    for (int k = 0; k < kMaxVars; ++k) e[k] = -a.terms().front().e[k];
    return LaurentPoly::monomial(a.p(), a.nvars(), e, fp_inv(a.terms().back().c, a.p()));
}

// ---- text ----

std::string to_string(const LaurentPoly& r, const RingCtx& ctx) {
    if (r.is_zero()) return "0";
    std::vector<Term> ts = r.terms();
    int n = r.nvars();
    std::sort(ts.begin(), ts.end(), [n](const Term& a, const Term& b) {
        int64_t da = 0, db = 0;
        for (int k = 0; k < n; ++k) {
            da += a.e[k];
            db += b.e[k];
        }
        if (da != db) return da > db;
        return b.e < a.e;
    });
    std::ostringstream os;
    uint32_t p = r.p();
    bool first = true;
    for (auto& t : ts) {
        bool neg = p > 2 && t.c > p / 2;
        uint32_t mag = neg ? p - t.c : t.c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool any_var = false;
        std::ostringstream vs;
        for (int k = 0; k < n; ++k) {
            if (t.e[k] == 0) continue;
            if (any_var) vs << "*";
            any_var = true;
            vs << (k < int(ctx.vars.size()) ? ctx.vars[k] : "v" + std::to_string(k));
            if (t.e[k] != 1) vs << "^" << t.e[k];
        }
        if (!any_var)
            os << mag;
        else if (mag == 1)
            os << vs.str();
        else
            os << mag << "*" << vs.str();
    }
    return os.str();
}

namespace {

struct PolyLexer {
    const std::string& s;
    size_t i = 0;
    int line, col0;
    PolyLexer(const std::string& str, int l, int c) : s(str), line(l), col0(c) {}
    void skip() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col0 + int(i)); }
    bool at_end() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    bool digits(int64_t& v) {
        skip();
        size_t st = i;
        v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) {
            if (v > (int64_t(1) << 40)) fail("integer too large");
            v = v * 10 + (s[i] - '0');
            ++i;
        }
        return i > st;
    }
    bool name(std::string& out) {
        skip();
        if (i < s.size() && (std::isalpha((unsigned char)s[i]) || s[i] == '_')) {
            size_t st = i;
            while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_' || s[i] == '\'')) ++i;
            out = s.substr(st, i - st);
            return true;
        }
        return false;
    }
};

} // namespace

LaurentPoly parse_poly(const std::string& text, const RingCtx& ctx, int line, int col) {
    PolyLexer lx(text, line, col);
    uint32_t p = ctx.p;
    int n = ctx.nvars();
    LaurentPoly result(p, n);
    if (lx.at_end()) lx.fail("empty polynomial");
    bool first = true;
    while (!lx.at_end()) {
        bool neg = false;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            neg = c == '-';
            ++lx.i;
        } else if (!first) {
            lx.fail("expected '+' or '-'");
        }
        first = false;
        uint32_t coef = 1;
        Exps e = zero_exps();
        bool have_factor = false;
        int64_t v;
        if (lx.digits(v)) {
            coef = fp_from_int(v, p);
            have_factor = true;
            if (lx.peek() != '*') goto done_term;
            ++lx.i;
        }
        for (;;) {
            std::string nm;
            if (!lx.name(nm)) lx.fail(have_factor ? "expected variable after '*'" : "expected coefficient or variable");
            int k = ctx.var_index(nm);
            if (k < 0) {
                lx.i -= nm.size();
                lx.fail("unknown variable '" + nm + "'");
            }
            int64_t pw = 1;
            if (lx.peek() == '^') {
                ++lx.i;
                bool eneg = false;
                if (lx.peek() == '-') {
                    eneg = true;
                    ++lx.i;
                } else if (lx.peek() == '+') {
                    ++lx.i;
                }
                if (!lx.digits(pw)) lx.fail("expected exponent");
                if (pw > 1000000) lx.fail("exponent too large");
                if (eneg) pw = -pw;
            }
            e[k] += int32_t(pw);
            have_factor = true;
            if (lx.peek() != '*') break;
            ++lx.i;
        }
    done_term:
        if (neg) coef = fp_neg(coef, p);
        result += LaurentPoly::monomial(p, n, e, coef);
    }
    return result;
}

} // namespace qca
