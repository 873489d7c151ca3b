#include "qca/pid.hpp"

#include <algorithm>

namespace qca {

// ---- dense F_p ----

FpMat to_fp(const PolyMatrix& m) {
    FpMat r(m.p(), m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            const LaurentPoly& x = m(i, j);
            if (!x.is_constant()) throw DomainError("matrix entry is not a constant");
            r(i, j) = const_term(x);
        }
    return r;
}

PolyMatrix from_fp(const FpMat& m, const RingCtx& ctx) {
    PolyMatrix r(ctx, m.rows, m.cols);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            if (m(i, j)) r(i, j) = r.scalar(m(i, j));
    return r;
}

FpMat fp_mul(const FpMat& a, const FpMat& b) {
    QCA_CHECK(a.cols == b.rows, "fp_mul shape");
    FpMat r(a.p, a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < a.cols; ++k) {
            uint32_t x = a(i, k);
            if (!x) continue;
            for (size_t j = 0; j < b.cols; ++j) r(i, j) = fp_add(r(i, j), qca::fp_mul(x, b(k, j), a.p), a.p);
        }
    return r;
}

std::vector<size_t> fp_rref(FpMat& m) {
    std::vector<size_t> piv;
    uint32_t p = m.p;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t i = r;
        while (i < m.rows && m(i, c) == 0) ++i;
        if (i == m.rows) continue;
        if (i != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m(i, j), m(r, j));
        uint32_t inv = fp_inv(m(r, c), p);
        for (size_t j = c; j < m.cols; ++j) m(r, j) = qca::fp_mul(m(r, j), inv, p);
        for (size_t k = 0; k < m.rows; ++k) {
            if (k == r || m(k, c) == 0) continue;
            uint32_t f = m(k, c);
            for (size_t j = c; j < m.cols; ++j) m(k, j) = fp_sub(m(k, j), qca::fp_mul(f, m(r, j), p), p);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

size_t fp_rank(FpMat m) { return fp_rref(m).size(); }

uint32_t fp_determinant(FpMat m) {
    QCA_CHECK(m.rows == m.cols, "determinant shape");
    uint32_t p = m.p, det = 1 % p;
    size_t n = m.rows;
    for (size_t c = 0; c < n; ++c) {
        size_t i = c;
        while (i < n && m(i, c) == 0) ++i;
        if (i == n) return 0;
        if (i != c) {
            for (size_t j = 0; j < n; ++j) std::swap(m(i, j), m(c, j));
            det = fp_neg(det, p);
        }
        det = qca::fp_mul(det, m(c, c), p);
        uint32_t inv = fp_inv(m(c, c), p);
        for (size_t k = c + 1; k < n; ++k) {
            if (!m(k, c)) continue;
            uint32_t f = qca::fp_mul(m(k, c), inv, p);
            for (size_t j = c; j < n; ++j) m(k, j) = fp_sub(m(k, j), qca::fp_mul(f, m(c, j), p), p);
        }
    }
    return det;
}

FpMat fp_inverse(const FpMat& m) {
    QCA_CHECK(m.rows == m.cols, "inverse shape");
    size_t n = m.rows;
    FpMat a(m.p, n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n + i) = 1 % m.p;
    }
    auto piv = fp_rref(a);
    if (piv.size() < n || (n && piv[n - 1] != n - 1)) throw NotInvertible("matrix is singular over F_" + std::to_string(m.p));
    FpMat r(m.p, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r(i, j) = a(i, n + j);
    return r;
}

FpMat fp_kernel(const FpMat& m) {
    FpMat a = m;
    auto piv = fp_rref(a);
    std::vector<bool> is_piv(m.cols, false);
    for (size_t c : piv) is_piv[c] = true;
    FpMat k(m.p, m.cols, m.cols - piv.size());
    size_t col = 0;
    for (size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        k(f, col) = 1 % m.p;
        for (size_t r = 0; r < piv.size(); ++r) k(piv[r], col) = fp_neg(a(r, f), m.p);
        ++col;
    }
    return k;
}

// ---- Euclidean domain F_p[z, 1/z] ----

static void require_pid(const PolyMatrix& m) {
    if (m.nvars() > 1) throw UnsupportedDimension("linear algebra over a base ring with more than one variable is not supported");
}

static int32_t degree(const LaurentPoly& x) { return x.nvars() == 0 ? 0 : x.span_degree(); }

namespace {

struct Tracked {
    PolyMatrix A, U, Uinv, V, Vinv;
    bool track_rows;

    void row_addmul(size_t i, size_t t, const LaurentPoly& c) { // row_i += c row_t
        for (size_t j = 0; j < A.cols(); ++j)
            if (!A(t, j).is_zero()) A(i, j) += c * A(t, j);
        if (!track_rows) return;
        for (size_t j = 0; j < U.cols(); ++j)
            if (!U(t, j).is_zero()) U(i, j) += c * U(t, j);
        for (size_t k = 0; k < Uinv.rows(); ++k)
            if (!Uinv(k, i).is_zero()) Uinv(k, t) -= c * Uinv(k, i);
    }
    void row_swap(size_t i, size_t t) {
        if (i == t) return;
        for (size_t j = 0; j < A.cols(); ++j) std::swap(A(i, j), A(t, j));
        if (!track_rows) return;
        for (size_t j = 0; j < U.cols(); ++j) std::swap(U(i, j), U(t, j));
        for (size_t k = 0; k < Uinv.rows(); ++k) std::swap(Uinv(k, i), Uinv(k, t));
    }
    void row_scale(size_t t, const LaurentPoly& u) {
        LaurentPoly ui = u.unit_inverse();
        for (size_t j = 0; j < A.cols(); ++j) A(t, j) = A(t, j) * u;
        if (!track_rows) return;
        for (size_t j = 0; j < U.cols(); ++j) U(t, j) = U(t, j) * u;
        for (size_t k = 0; k < Uinv.rows(); ++k) Uinv(k, t) = Uinv(k, t) * ui;
    }
    void col_addmul(size_t j, size_t t, const LaurentPoly& c) { // col_j += c col_t
        for (size_t i = 0; i < A.rows(); ++i)
            if (!A(i, t).is_zero()) A(i, j) += c * A(i, t);
        for (size_t i = 0; i < V.rows(); ++i)
            if (!V(i, t).is_zero()) V(i, j) += c * V(i, t);
        if (!track_rows) return;
        for (size_t k = 0; k < Vinv.cols(); ++k)
            if (!Vinv(j, k).is_zero()) Vinv(t, k) -= c * Vinv(j, k);
    }
    void col_swap(size_t j, size_t t) {
        if (j == t) return;
        for (size_t i = 0; i < A.rows(); ++i) std::swap(A(i, j), A(i, t));
        for (size_t i = 0; i < V.rows(); ++i) std::swap(V(i, j), V(i, t));
        if (!track_rows) return;
        for (size_t k = 0; k < Vinv.cols(); ++k) std::swap(Vinv(j, k), Vinv(t, k));
    }
};

PolyMatrix kernel_dense(const PolyMatrix& m);

} // namespace

Smith smith_normal_form(const PolyMatrix& m) {
    require_pid(m);
    size_t r = m.rows(), c = m.cols();
    const RingCtx& ctx = m.ctx();
    Tracked T{m, PolyMatrix::identity(ctx, r), PolyMatrix::identity(ctx, r), PolyMatrix::identity(ctx, c),
              PolyMatrix::identity(ctx, c), true};
    PolyMatrix& A = T.A;
    size_t t = 0;
    for (; t < std::min(r, c); ++t) {
        size_t bi = r, bj = c;
        for (size_t i = t; i < r; ++i)
            for (size_t j = t; j < c; ++j)
                if (!A(i, j).is_zero() && (bi == r || degree(A(i, j)) < degree(A(bi, bj)))) {
                    bi = i;
                    bj = j;
                }
        if (bi == r) break;
        T.row_swap(bi, t);
        T.col_swap(bj, t);
        for (;;) {
            bool changed = false;
            for (size_t i = t + 1; i < r && !changed; ++i) {
                if (A(i, t).is_zero()) continue;
                LaurentPoly q, rem;
                laurent_divrem(A(i, t), A(t, t), q, rem);
                T.row_addmul(i, t, -q);
                if (!rem.is_zero()) {
                    T.row_swap(i, t);
                    changed = true;
                }
            }
            if (changed) continue;
            for (size_t j = t + 1; j < c && !changed; ++j) {
                if (A(t, j).is_zero()) continue;
                LaurentPoly q, rem;
                laurent_divrem(A(t, j), A(t, t), q, rem);
                T.col_addmul(j, t, -q);
                if (!rem.is_zero()) {
                    T.col_swap(j, t);
                    changed = true;
                }
            }
            if (changed) continue;
            // Divisibility chain: fold a non-divisible row into the pivot row.
            for (size_t i = t + 1; i < r && !changed; ++i)
                for (size_t j = t + 1; j < c && !changed; ++j) {
                    if (A(i, j).is_zero()) continue;
                    LaurentPoly q, rem;
                    laurent_divrem(A(i, j), A(t, t), q, rem);
                    if (!rem.is_zero()) {
                        T.row_addmul(t, i, A.scalar(1));
                        changed = true;
                    }
                }
            if (!changed) break;
        }
        T.row_scale(t, normalizing_unit(A(t, t)));
    }
    return Smith{T.U, T.A, T.V, T.Uinv, T.Vinv, t};
}

PolyMatrix kernel(const PolyMatrix& m) {
    require_pid(m);
    if (m.nvars() == 0) return from_fp(fp_kernel(to_fp(m)), m.ctx());
    return kernel_dense(m);
}

size_t rank(const PolyMatrix& m) {
    require_pid(m);
    if (m.nvars() == 0) return fp_rank(to_fp(m));
    return m.cols() - kernel(m).cols();
}

std::optional<PolyMatrix> solve(const PolyMatrix& m, const PolyMatrix& b) {
    require_pid(m);
    if (b.rows() != m.rows()) throw DomainError("solve: right-hand side has wrong length");
    Smith s = smith_normal_form(m);
    PolyMatrix ub = s.U * b;
    PolyMatrix y(m.ctx(), m.cols(), b.cols());
    for (size_t j = 0; j < b.cols(); ++j)
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i < s.rank) {
                LaurentPoly q;
                if (!ub(i, j).divides_into(s.D(i, i), q)) return std::nullopt;
                y(i, j) = q;
            } else if (!ub(i, j).is_zero()) {
                return std::nullopt;
            }
        }
    return s.V * y;
}

bool is_direct_summand(const PolyMatrix& k) {
    require_pid(k);
    Smith s = smith_normal_form(k);
    if (s.rank != k.cols()) throw DomainError("columns are linearly dependent");
    for (size_t i = 0; i < s.rank; ++i)
        if (!s.D(i, i).is_unit()) return false;
    return true;
}

PolyMatrix complete_basis(const PolyMatrix& k) {
    require_pid(k);
    Smith s = smith_normal_form(k);
    if (s.rank != k.cols()) throw DomainError("columns are linearly dependent");
    for (size_t i = 0; i < s.rank; ++i)
        if (!s.D(i, i).is_unit()) throw DomainError("columns do not span a direct summand");
    size_t n = k.rows();
    return hstack(k, s.Uinv.block(0, s.rank, n, n - s.rank));
}


namespace {

// Dense column for reduce_basis: a[r * w + d] is the coefficient of x^d in row r; lowest degree is 0.
struct DenseCol {
    size_t w = 0;   // 0 for the zero column
    std::vector<uint32_t> a;
    size_t lead = 0;   // last row attaining degree w - 1

    int32_t hi() const { return int32_t(w) - 1; }
};

// Trims to lowest degree 0 and recomputes w and lead.
void renormalize(DenseCol& c, size_t rows) {
    size_t w = c.w;
    size_t lo = w, top = 0;
    bool any = false;
    for (size_t r = 0; r < rows; ++r)
        for (size_t d = 0; d < w; ++d)
            if (c.a[r * w + d]) {
                lo = std::min(lo, d);
                top = std::max(top, d);
                any = true;
            }
    if (!any) {
        c.w = 0;
        c.a.clear();
        return;
    }
    size_t nw = top - lo + 1;
    if (lo != 0 || nw != w) {
        std::vector<uint32_t> b(rows * nw);
        for (size_t r = 0; r < rows; ++r)
            for (size_t d = 0; d < nw; ++d) b[r * nw + d] = c.a[r * w + lo + d];
        c.a.swap(b);
        c.w = nw;
    }
    for (size_t r = 0; r < rows; ++r)
        if (c.a[r * c.w + c.w - 1]) c.lead = r;
}

std::vector<DenseCol> to_cols(const PolyMatrix& b) {
    std::vector<DenseCol> cols(b.cols());
    for (size_t j = 0; j < b.cols(); ++j) {
        int32_t lo = 0, hi = -1;
        bool any = false;
        for (size_t i = 0; i < b.rows(); ++i) {
            const LaurentPoly& x = b(i, j);
            if (x.is_zero()) continue;
            lo = any ? std::min(lo, x.min_deg(0)) : x.min_deg(0);
            hi = any ? std::max(hi, x.max_deg(0)) : x.max_deg(0);
            any = true;
        }
        if (!any) continue;
        DenseCol& c = cols[j];
        c.w = size_t(hi - lo + 1);
        c.a.assign(b.rows() * c.w, 0);
        for (size_t i = 0; i < b.rows(); ++i)
            for (const Term& t : b(i, j).terms()) c.a[i * c.w + size_t(t.e[0] - lo)] = t.c;
        renormalize(c, b.rows());
    }
    return cols;
}

PolyMatrix from_cols(const std::vector<DenseCol>& cols, const PolyMatrix& like) {
    PolyMatrix b(like.ctx(), like.rows(), cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < like.rows(); ++i) {
            LaurentPoly x(like.p(), 1);
            for (size_t d = 0; d < cols[j].w; ++d)
                if (uint32_t v = cols[j].a[i * cols[j].w + d]) {
                    Exps e{};
                    e[0] = int32_t(d);
                    x.mutable_terms().push_back({e, v});
                }
            b(i, j) = x;
        }
    return b;
}

// x -> x^-1 followed by the shift back to lowest degree 0.
void reflect(std::vector<DenseCol>& cols, size_t rows) {
    for (DenseCol& c : cols) {
        for (size_t r = 0; r < rows; ++r) std::reverse(c.a.begin() + long(r * c.w), c.a.begin() + long((r + 1) * c.w));
        if (c.w) renormalize(c, rows);
    }
}

// Mulders-Storjohann elimination at the top degree.
bool popov_pass(std::vector<DenseCol>& cols, size_t rows, uint32_t p) {
    bool changed = false;
    size_t k = cols.size();
    for (;;) {
        bool found = false;
        for (size_t j = 0; j < k && !found; ++j)
            for (size_t l = 0; l < k && !found; ++l) {
                DenseCol& cj = cols[j];
                const DenseCol& cl = cols[l];
                if (j == l || !cj.w || !cl.w || cj.lead != cl.lead) continue;
                if (cj.hi() < cl.hi() || (cj.hi() == cl.hi() && j < l)) continue;
                size_t i = cj.lead;
                uint32_t c = fp_mul(cj.a[i * cj.w + cj.w - 1], fp_inv(cl.a[i * cl.w + cl.w - 1], p), p);
                size_t s = cj.w - cl.w;
                for (size_t r = 0; r < rows; ++r) {
                    const uint32_t* src = &cl.a[r * cl.w];
                    uint32_t* dst = &cj.a[r * cj.w + s];
                    for (size_t d = 0; d < cl.w; ++d)
                        if (src[d]) dst[d] = fp_sub(dst[d], fp_mul(c, src[d], p), p);
                }
                renormalize(cj, rows);
                found = changed = true;
            }
        if (!found) break;
    }
    return changed;
}

// col_j -= c x^s col_l, widening col_j when needed.
void axpy(DenseCol& cj, const DenseCol& cl, uint32_t c, size_t s, size_t rows, uint32_t p) {
    size_t w = std::max(cj.w, cl.w + s);
    if (w > cj.w) {
        std::vector<uint32_t> b(rows * w, 0);
        for (size_t r = 0; r < rows; ++r)
            std::copy(cj.a.begin() + long(r * cj.w), cj.a.begin() + long((r + 1) * cj.w), b.begin() + long(r * w));
        cj.a.swap(b);
        cj.w = w;
    }
    for (size_t r = 0; r < rows; ++r) {
        const uint32_t* src = &cl.a[r * cl.w];
        uint32_t* dst = &cj.a[r * cj.w + s];
        for (size_t d = 0; d < cl.w; ++d)
            if (src[d]) dst[d] = fp_sub(dst[d], fp_mul(c, src[d], p), p);
    }
}

struct Lead {
    size_t pos = 0;   // row of the leading entry
    size_t deg = 0;
    bool zero = true;
};

// Leading entry of a column of [A; I] with A rows taking priority: among the first `ra` rows if any is
// nonzero, otherwise among the rest; highest degree, last row on ties.
Lead lead_of(const DenseCol& c, size_t ra, size_t rows) {
    Lead l;
    for (size_t part = 0; part < 2 && l.zero; ++part) {
        size_t r0 = part == 0 ? 0 : ra, r1 = part == 0 ? ra : rows;
        for (size_t r = r0; r < r1; ++r)
            for (size_t d = c.w; d-- > 0;)
                if (c.a[r * c.w + d]) {
                    if (l.zero || d >= l.deg) l = {r, d, false};
                    break;
                }
    }
    return l;
}

// Kernel over F_p[x^+-1]: weak Popov reduction of [A; I] with the A rows dominating. The columns whose
// A part vanishes form a reduced kernel basis.
PolyMatrix kernel_dense(const PolyMatrix& m) {
    size_t ra = m.rows(), c = m.cols(), rows = ra + c;
    uint32_t p = m.p();
    std::vector<DenseCol> cols = to_cols(vstack(m, PolyMatrix::identity(m.ctx(), c)));
    std::vector<Lead> lead(c);
    std::vector<size_t> owner(rows, c);
    std::vector<size_t> work;
    for (size_t j = 0; j < c; ++j) {
        lead[j] = lead_of(cols[j], ra, rows);
        work.push_back(j);
    }
    while (!work.empty()) {
        size_t j = work.back();
        work.pop_back();
        for (;;) {
            size_t l = owner[lead[j].pos];
            if (l == c) {
                owner[lead[j].pos] = j;
                break;
            }
            if (lead[j].deg < lead[l].deg) {   // j takes the slot; reduce the old owner instead
                owner[lead[j].pos] = j;
                work.push_back(l);
                break;
            }
            size_t pos = lead[j].pos;
            uint32_t f = fp_mul(cols[j].a[pos * cols[j].w + lead[j].deg],
                                fp_inv(cols[l].a[pos * cols[l].w + lead[l].deg], p), p);
            axpy(cols[j], cols[l], f, lead[j].deg - lead[l].deg, rows, p);
            renormalize(cols[j], rows);
            lead[j] = lead_of(cols[j], ra, rows);
            if (lead[j].zero) throw InternalError("kernel: unimodular reduction produced a zero column");
        }
    }
    std::vector<DenseCol> ker;
    for (size_t j = 0; j < c; ++j) {
        if (lead[j].pos < ra) continue;
        DenseCol k;
        k.w = cols[j].w;
        k.a.assign(cols[j].a.begin() + long(ra * k.w), cols[j].a.end());
        ker.push_back(std::move(k));
    }
    return from_cols(ker, PolyMatrix(m.ctx(), c, 0));
}

int64_t total_spread(const std::vector<DenseCol>& cols) {
    int64_t s = 0;
    for (const DenseCol& c : cols)
        if (c.w) s += int64_t(c.w) - 1;
    return s;
}

} // namespace

PolyMatrix reduce_basis(const PolyMatrix& k) {
    require_pid(k);
    if (k.nvars() == 0 || k.cols() == 0) return k;
    size_t rows = k.rows();
    uint32_t p = k.p();
    std::vector<DenseCol> b = to_cols(k);
    int64_t best = total_spread(b);
    std::vector<DenseCol> best_b = b;
    for (int round = 0; round < 64; ++round) {
        bool c1 = popov_pass(b, rows, p);
        reflect(b, rows);
        bool c2 = popov_pass(b, rows, p);
        reflect(b, rows);
        int64_t s = total_spread(b);
        if (s < best) {
            best = s;
            best_b = b;
        } else if (!c1 && !c2) {
            break;
        } else if (s >= best && round > 4) {
            break;
        }
    }
    return from_cols(best_b, k);
}

} // namespace qca
