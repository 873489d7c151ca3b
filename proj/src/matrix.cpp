#include "qca/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "qca/pid.hpp"

namespace qca {

PolyMatrix::PolyMatrix(const RingCtx& ctx, size_t rows, size_t cols)
    : ctx_(ctx), r_(rows), c_(cols), a_(rows * cols, LaurentPoly(ctx.p, ctx.nvars())) {}

PolyMatrix PolyMatrix::identity(const RingCtx& ctx, size_t n) {
    PolyMatrix m(ctx, n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = m.scalar(1);
    return m;
}

PolyMatrix PolyMatrix::from_ints(const RingCtx& ctx, const std::vector<std::vector<int64_t>>& rows) {
    size_t nc = rows.empty() ? 0 : rows[0].size();
    PolyMatrix m(ctx, rows.size(), nc);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc) throw DomainError("ragged matrix rows");
        for (size_t j = 0; j < nc; ++j) m(i, j) = m.scalar(rows[i][j]);
    }
    return m;
}

PolyMatrix PolyMatrix::diag(const RingCtx& ctx, const std::vector<LaurentPoly>& d) {
    PolyMatrix m(ctx, d.size(), d.size());
    for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

static void same_shape(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("matrix shape mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                          " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    if (a.ctx() != b.ctx()) throw DomainError("matrices over different rings");
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    same_shape(*this, o);
    PolyMatrix r(*this);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
    same_shape(*this, o);
    PolyMatrix r(*this);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
}

PolyMatrix PolyMatrix::operator-() const {
    PolyMatrix r(*this);
    for (auto& x : r.a_) x = -x;
    return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    if (c_ != o.r_)
        throw DomainError("matrix product shape mismatch: " + std::to_string(r_) + "x" + std::to_string(c_) + " * " +
                          std::to_string(o.r_) + "x" + std::to_string(o.c_));
    if (ctx_ != o.ctx_) throw DomainError("matrices over different rings");
    PolyMatrix r(ctx_, r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const LaurentPoly& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < o.c_; ++j) {
                const LaurentPoly& y = o(k, j);
                if (!y.is_zero()) r(i, j) += x * y;
            }
        }
    return r;
}

PolyMatrix PolyMatrix::operator*(const LaurentPoly& s) const {
    PolyMatrix r(*this);
    for (auto& x : r.a_) x = x * s;
    return r;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
    return r_ == o.r_ && c_ == o.c_ && ctx_ == o.ctx_ && a_ == o.a_;
}

bool PolyMatrix::is_zero() const {
    for (auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool PolyMatrix::is_identity() const {
    if (!square()) return false;
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j)
            if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
    return true;
}

bool PolyMatrix::is_constant() const {
    for (auto& x : a_)
        if (!x.is_constant()) return false;
    return true;
}

PolyMatrix PolyMatrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    QCA_CHECK(r0 + nr <= r_ && c0 + nc <= c_, "block out of range");
    PolyMatrix m(ctx_, nr, nc);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void PolyMatrix::set_block(size_t r0, size_t c0, const PolyMatrix& m) {
    QCA_CHECK(r0 + m.rows() <= r_ && c0 + m.cols() <= c_, "set_block out of range");
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix m(ctx_, c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

size_t PolyMatrix::total_terms() const {
    size_t n = 0;
    for (auto& x : a_) n += x.size();
    return n;
}

PolyMatrix PolyMatrix::retyped(const RingCtx& c) const {
    QCA_CHECK(c.p == ctx_.p, "retype across fields");
    PolyMatrix m(c, r_, c_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].with_nvars(c.nvars());
    return m;
}

PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows() != b.rows()) throw DomainError("hstack row mismatch");
    PolyMatrix m(a.ctx(), a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols() != b.cols()) throw DomainError("vstack column mismatch");
    PolyMatrix m(a.ctx(), a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

PolyMatrix block2(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c, const PolyMatrix& d) {
    return vstack(hstack(a, b), hstack(c, d));
}

PolyMatrix involute(const PolyMatrix& m) {
    PolyMatrix r(m);
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = involute(m(i, j));
    return r;
}

PolyMatrix adjoint(const PolyMatrix& m) {
    PolyMatrix r(m.ctx(), m.cols(), m.rows());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(j, i) = involute(m(i, j));
    return r;
}

bool is_unit(const LaurentPoly& r) { return r.is_unit(); }

// Bareiss elimination; returns the sign-corrected determinant.
LaurentPoly determinant(const PolyMatrix& m) {
    if (!m.square()) throw DomainError("determinant of a non-square matrix");
    size_t n = m.rows();
    if (n == 0) return m.scalar(1);
    if (m.is_constant()) {
        uint32_t d = fp_determinant(to_fp(m));
        return m.scalar(d);
    }
    PolyMatrix a(m);
    LaurentPoly prev = m.scalar(1);
    bool neg = false;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = n;
        for (size_t i = k; i < n; ++i)
            if (!a(i, k).is_zero() && (piv == n || a(i, k).size() < a(piv, k).size())) piv = i;
        if (piv == n) return m.zero();
        if (piv != k) {
            for (size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            neg = !neg;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                LaurentPoly t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                a(i, j) = t.exact_div(prev);
            }
            a(i, k) = m.zero();
        }
        prev = a(k, k);
    }
    return neg ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

PolyMatrix inverse(const PolyMatrix& m) {
    if (!m.square()) throw DomainError("inverse of a non-square matrix");
    size_t n = m.rows();
    if (n == 0) return m;
    if (m.is_constant()) return from_fp(fp_inverse(to_fp(m)), m.ctx());
    // Fraction-free elimination on [M | I], then back substitution for the
    // adjugate-scaled solution, finally divided by the (unit) determinant.
    PolyMatrix a = hstack(m, PolyMatrix::identity(m.ctx(), n));
    size_t w = 2 * n;
    LaurentPoly prev = m.scalar(1);
    bool neg = false;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = n;
        for (size_t i = k; i < n; ++i)
            if (!a(i, k).is_zero() && (piv == n || a(i, k).size() < a(piv, k).size())) piv = i;
        if (piv == n) throw NotInvertible("matrix is singular");
        if (piv != k) {
            for (size_t j = 0; j < w; ++j) std::swap(a(k, j), a(piv, j));
            neg = !neg;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < w; ++j) {
                LaurentPoly t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                a(i, j) = t.exact_div(prev);
            }
            a(i, k) = m.zero();
        }
        prev = a(k, k);
    }
    LaurentPoly det = prev; // determinant up to the sign `neg`
    if (!det.is_unit()) throw NotInvertible("determinant " + to_string(neg ? -det : det, m.ctx()) + " is not a unit");
    // Rows of `a` satisfy upper-triangular system; det * x is polynomial.
    PolyMatrix x(m.ctx(), n, n);
    for (size_t c = 0; c < n; ++c)
        for (size_t ii = n; ii-- > 0;) {
            LaurentPoly num = det * a(ii, n + c);
            for (size_t j = ii + 1; j < n; ++j) num -= a(ii, j) * x(j, c);
            x(ii, c) = num.exact_div(a(ii, ii));
        }
    LaurentPoly dinv = det.unit_inverse();
    return x * dinv;
}

PolyMatrix hat_dsum(const PolyMatrix& u, const PolyMatrix& v) {
    if (!u.square() || !v.square() || u.rows() % 2 || v.rows() % 2)
        throw DomainError("unitary direct sum needs square matrices of even size");
    if (u.ctx() != v.ctx()) throw DomainError("matrices over different rings");
    size_t q = u.rows() / 2, r = v.rows() / 2, t = q + r;
    PolyMatrix m(u.ctx(), 2 * t, 2 * t);
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) {
            m.set_block(bi * t, bj * t, u.block(bi * q, bj * q, q, q));
            m.set_block(bi * t + q, bj * t + q, v.block(bi * r, bj * r, r, r));
        }
    return m;
}

PolyMatrix form_dsum(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.ctx() != b.ctx()) throw DomainError("matrices over different rings");
    PolyMatrix m(a.ctx(), a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

std::pair<int32_t, int32_t> z_spread(const PolyMatrix& m, int var) {
    bool any = false;
    int32_t lo = 0, hi = 0;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            const LaurentPoly& x = m(i, j);
            if (x.is_zero()) continue;
            int32_t a = x.min_deg(var), b = x.max_deg(var);
            if (!any) {
                lo = a;
                hi = b;
                any = true;
            } else {
                lo = std::min(lo, a);
                hi = std::max(hi, b);
            }
        }
    return {lo, hi};
}

static int32_t floor_div(int32_t a, int32_t b) {
    int32_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

PolyMatrix coarse_grain(const PolyMatrix& m, int var, int b) {
    if (b < 1) throw DomainError("coarse-graining factor must be at least 1");
    if (var < 0 || var >= m.nvars()) throw DomainError("coarse-graining variable out of range");
    size_t B = size_t(b);
    PolyMatrix r(m.ctx(), m.rows() * B, m.cols() * B);
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            for (const Term& t : m(i, j).terms())
                for (int col = 0; col < b; ++col) {
                    int32_t e = t.e[var] + col;
                    int32_t hi = floor_div(e, b);
                    int32_t row = e - hi * b;
                    Exps ex = t.e;
                    ex[var] = hi;
                    r(i * B + size_t(row), j * B + size_t(col)) += LaurentPoly::monomial(m.p(), m.nvars(), ex, t.c);
                }
    return r;
}

PolyMatrix embed(const PolyMatrix& m, const std::string& newvar) {
    return m.retyped(ctx_with_var(m.ctx(), newvar));
}

PolyMatrix substitute_one(const PolyMatrix& m, const std::string& var) {
    int k = m.ctx().require_var(var);
    PolyMatrix r(ctx_without_var(m.ctx(), var), m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = substitute_one(m(i, j), k);
    return r;
}

PolyMatrix substitute_all_one(const PolyMatrix& m) {
    PolyMatrix r(RingCtx{m.p(), {}}, m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = r.scalar(augment(m(i, j)));
    return r;
}

PolyMatrix const_term(const PolyMatrix& m) {
    PolyMatrix r(RingCtx{m.p(), {}}, m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = r.scalar(const_term(m(i, j)));
    return r;
}

PolyMatrix move_var_last(const PolyMatrix& m, const std::string& var) {
    int k = m.ctx().require_var(var);
    int n = m.nvars();
    if (k == n - 1) return m;
    RingCtx c = m.ctx();
    c.vars.erase(c.vars.begin() + k);
    c.vars.push_back(var);
    PolyMatrix r(c, m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            LaurentPoly x = m(i, j);
            for (auto& t : x.mutable_terms()) {
                int32_t e = t.e[k];
                for (int v = k; v + 1 < n; ++v) t.e[v] = t.e[v + 1];
                t.e[n - 1] = e;
            }
            x.normalize();
            r(i, j) = x;
        }
    return r;
}

PolyMatrix coeff_in(const PolyMatrix& m, int var, int32_t k) {
    PolyMatrix r(m.ctx(), m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).coeff_in(var, k);
    return r;
}

std::string to_string(const PolyMatrix& m) {
    std::ostringstream os;
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << to_string(m(i, j), m.ctx());
        }
        if (i + 1 < m.rows()) os << "\n";
    }
    return os.str();
}

PolyMatrix parse_matrix(const std::string& text, const RingCtx& ctx, int line0) {
    std::vector<std::vector<LaurentPoly>> rows;
    int line = line0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find_first_of(";\n", pos);
        if (end == std::string::npos) end = text.size();
        std::string row = text.substr(pos, end - pos);
        if (row.find_first_not_of(" \t\r") != std::string::npos) {
            std::vector<LaurentPoly> entries;
            size_t s = 0;
            for (;;) {
                size_t c = row.find(',', s);
                std::string cell = row.substr(s, c == std::string::npos ? std::string::npos : c - s);
                entries.push_back(parse_poly(cell, ctx, line, int(s) + 1));
                if (c == std::string::npos) break;
                s = c + 1;
            }
            if (!rows.empty() && entries.size() != rows[0].size())
                throw ParseError("row has " + std::to_string(entries.size()) + " entries, expected " +
                                     std::to_string(rows[0].size()),
                                 line, 1);
            rows.push_back(std::move(entries));
        }
        if (end < text.size() && text[end] == '\n') ++line;
        pos = end + 1;
    }
    PolyMatrix m(ctx, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

} // namespace qca
