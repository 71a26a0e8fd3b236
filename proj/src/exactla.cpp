#include "perc/exactla.hpp"

#include <algorithm>
#include <mutex>

namespace perc {

int modp(long long a, int p) {
    long long r = a % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

namespace {

const std::vector<int>& inverse_table(int p) {
    thread_local int cached_p = 0;
    thread_local std::vector<int> table;
    if (cached_p != p) {
        table.assign(p, 0);
        for (int a = 1; a < p; ++a) {
            long long r = 1, b = a;
            for (int e = p - 2; e > 0; e >>= 1) {
                if (e & 1) r = r * b % p;
                b = b * b % p;
            }
            table[a] = static_cast<int>(r);
        }
        cached_p = p;
    }
    return table;
}

}  // namespace

int inv_mod(int a, int p) {
    a = modp(a, p);
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    return inverse_table(p)[a];
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

FieldMatrix::FieldMatrix(int p, int rows, int cols)
    : p_(p), r_(rows), c_(cols), e_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
}

FieldMatrix FieldMatrix::identity(int p, int n) {
    FieldMatrix m(p, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FieldMatrix FieldMatrix::from_rows(int p, const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    FieldMatrix m(p, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw InputError("ragged matrix rows");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

FieldMatrix FieldMatrix::from_columns(int p, int rows, const std::vector<Vec>& cols) {
    FieldMatrix m(p, rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.c_; ++j) {
        if (static_cast<int>(cols[j].size()) != rows) throw InputError("column length mismatch");
        for (int i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
    }
    return m;
}

FieldMatrix FieldMatrix::column(int p, const Vec& v) {
    return from_columns(p, static_cast<int>(v.size()), {v});
}

Vec FieldMatrix::col(int j) const {
    Vec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec FieldMatrix::row(int i) const {
    return Vec(e_.begin() + static_cast<long>(i) * c_, e_.begin() + static_cast<long>(i + 1) * c_);
}

bool FieldMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](int x) { return x == 0; });
}

bool FieldMatrix::is_identity() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix t(p_, c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t.e_[static_cast<size_t>(j) * r_ + i] = (*this)(i, j);
    return t;
}

FieldMatrix FieldMatrix::block(int r0, int c0, int nr, int nc) const {
    FieldMatrix b(p_, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b.e_[static_cast<size_t>(i) * nc + j] = (*this)(r0 + i, c0 + j);
    return b;
}

void FieldMatrix::put(int r0, int c0, const FieldMatrix& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) e_[static_cast<size_t>(r0 + i) * c_ + c0 + j] = b(i, j);
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.rows())
        throw InputError("matrix product shape mismatch: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    int p = a.prime();
    FieldMatrix c(p, a.rows(), b.cols());
    std::vector<long long> acc(b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (int k = 0; k < a.cols(); ++k) {
            int x = a(i, k);
            if (!x) continue;
            for (int j = 0; j < b.cols(); ++j) acc[j] += static_cast<long long>(x) * b(k, j);
        }
        for (int j = 0; j < b.cols(); ++j) c.set(i, j, acc[j]);
    }
    return c;
}

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix sum shape mismatch");
    FieldMatrix c(a.prime(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.set(i, j, a(i, j) + b(i, j));
    return c;
}

FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix difference shape mismatch");
    FieldMatrix c(a.prime(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.set(i, j, a(i, j) - b(i, j));
    return c;
}

FieldMatrix scaled(const FieldMatrix& a, int s) {
    FieldMatrix c(a.prime(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.set(i, j, static_cast<long long>(a(i, j)) * s);
    return c;
}

Vec apply(const FieldMatrix& m, const Vec& v) {
    return (m * FieldMatrix::column(m.prime(), v)).col(0);
}

FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != b.rows()) throw InputError("hstack row mismatch");
    FieldMatrix c(a.prime(), a.rows(), a.cols() + b.cols());
    c.put(0, 0, a);
    c.put(0, a.cols(), b);
    return c;
}

FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.cols()) throw InputError("vstack column mismatch");
    FieldMatrix c(a.prime(), a.rows() + b.rows(), a.cols());
    c.put(0, 0, a);
    c.put(a.rows(), 0, b);
    return c;
}

FieldMatrix block_diag(const FieldMatrix& a, const FieldMatrix& b) {
    FieldMatrix c(a.prime(), a.rows() + b.rows(), a.cols() + b.cols());
    c.put(0, 0, a);
    c.put(a.rows(), a.cols(), b);
    return c;
}

Echelon rref(const FieldMatrix& m) {
    int p = m.prime();
    int R = m.rows(), C = m.cols();
    std::vector<int> a = m.data();
    auto at = [&](int i, int j) -> int& { return a[static_cast<size_t>(i) * C + j]; };
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < C && row < R; ++col) {
        int piv = -1;
        for (int i = row; i < R; ++i)
            if (at(i, col)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < C; ++j) std::swap(at(piv, j), at(row, j));
        int inv = inv_mod(at(row, col), p);
        for (int j = col; j < C; ++j) at(row, j) = static_cast<int>(static_cast<long long>(at(row, j)) * inv % p);
        for (int i = 0; i < R; ++i) {
            if (i == row || !at(i, col)) continue;
            long long f = at(i, col);
            for (int j = col; j < C; ++j) at(i, j) = modp(at(i, j) - f * at(row, j), p);
        }
        pivots.push_back(col);
        ++row;
    }
    FieldMatrix r(p, R, C);
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j) r.set(i, j, at(i, j));
    return {r, pivots};
}

int rank(const FieldMatrix& m) { return static_cast<int>(rref(m).pivots.size()); }

std::vector<Vec> kernel_basis(const FieldMatrix& m) {
    int p = m.prime();
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), 0);
        v[free] = 1;
        for (size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = modp(-e.r(static_cast<int>(k), free), p);
        basis.push_back(std::move(v));
    }
    return basis;
}

FieldMatrix kernel_matrix(const FieldMatrix& m) {
    return FieldMatrix::from_columns(m.prime(), m.cols(), kernel_basis(m));
}

FieldMatrix cokernel_matrix(const FieldMatrix& m) {
    return kernel_matrix(m.transpose()).transpose();
}

std::optional<Vec> solve_linear(const FieldMatrix& m, const Vec& b) {
    if (static_cast<int>(b.size()) != m.rows())
        throw InputError("solve_linear: right-hand side has length " + std::to_string(b.size()) +
                         ", matrix has " + std::to_string(m.rows()) + " rows");
    auto x = solve_matrix(m, FieldMatrix::column(m.prime(), b));
    if (!x) return std::nullopt;
    return x->col(0);
}

std::optional<FieldMatrix> solve_matrix(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != b.rows()) throw InputError("solve_matrix: row mismatch");
    int n = a.cols();
    Echelon e = rref(hstack(a, b));
    FieldMatrix x(a.prime(), n, b.cols());
    for (size_t k = 0; k < e.pivots.size(); ++k) {
        int c = e.pivots[k];
        if (c >= n) return std::nullopt;
        for (int j = 0; j < b.cols(); ++j) x.set(c, j, e.r(static_cast<int>(k), n + j));
    }
    return x;
}

std::optional<FieldMatrix> inverse(const FieldMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    if (rank(m) != m.rows()) return std::nullopt;
    return solve_matrix(m, FieldMatrix::identity(m.prime(), m.rows()));
}

FieldMatrix column_space(const FieldMatrix& m) {
    Echelon e = rref(m);
    FieldMatrix c(m.prime(), m.rows(), static_cast<int>(e.pivots.size()));
    for (size_t k = 0; k < e.pivots.size(); ++k)
        for (int i = 0; i < m.rows(); ++i) c.set(i, static_cast<int>(k), m(i, e.pivots[k]));
    return c;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw InputError("ragged integer matrix");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw InputError("integer matrix product shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

// Bareiss fraction-free elimination.
BigInt determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("determinant of non-square matrix");
    int n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int sw = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    sw = i;
                    break;
                }
            if (sw < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(sw, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

namespace {

struct SnfState {
    IntMatrix d, u, v;

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int j = 0; j < d.cols(); ++j) std::swap(d.at(a, j), d.at(b, j));
        for (int j = 0; j < u.cols(); ++j) std::swap(u.at(a, j), u.at(b, j));
    }
    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int i = 0; i < d.rows(); ++i) std::swap(d.at(i, a), d.at(i, b));
        for (int i = 0; i < v.rows(); ++i) std::swap(v.at(i, a), v.at(i, b));
    }
    // row_dst += q * row_src
    void add_row(int dst, int src, const BigInt& q) {
        for (int j = 0; j < d.cols(); ++j) d.at(dst, j) += q * d.at(src, j);
        for (int j = 0; j < u.cols(); ++j) u.at(dst, j) += q * u.at(src, j);
    }
    void add_col(int dst, int src, const BigInt& q) {
        for (int i = 0; i < d.rows(); ++i) d.at(i, dst) += q * d.at(i, src);
        for (int i = 0; i < v.rows(); ++i) v.at(i, dst) += q * v.at(i, src);
    }
    void negate_row(int r) {
        for (int j = 0; j < d.cols(); ++j) d.at(r, j) = -d.at(r, j);
        for (int j = 0; j < u.cols(); ++j) u.at(r, j) = -u.at(r, j);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    SnfState s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    int R = m.rows(), C = m.cols();
    for (int t = 0; t < std::min(R, C); ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        int bi = -1, bj = -1;
        for (int i = t; i < R; ++i)
            for (int j = t; j < C; ++j)
                if (s.d.at(i, j) != 0 && (bi < 0 || abs(s.d.at(i, j)) < abs(s.d.at(bi, bj)))) {
                    bi = i;
                    bj = j;
                }
        if (bi < 0) break;
        s.swap_rows(t, bi);
        s.swap_cols(t, bj);
        for (;;) {
            bool clean = true;
            for (int i = t + 1; i < R; ++i) {
                if (s.d.at(i, t) == 0) continue;
                BigInt q = s.d.at(i, t) / s.d.at(t, t);
                s.add_row(i, t, -q);
                if (s.d.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < C; ++j) {
                if (s.d.at(t, j) == 0) continue;
                BigInt q = s.d.at(t, j) / s.d.at(t, t);
                s.add_col(j, t, -q);
                if (s.d.at(t, j) != 0) clean = false;
            }
            if (!clean) {
                int mi = t, mj = t;
                for (int i = t + 1; i < R; ++i)
                    if (s.d.at(i, t) != 0 && abs(s.d.at(i, t)) < abs(s.d.at(mi, mj))) {
                        mi = i;
                        mj = t;
                    }
                for (int j = t + 1; j < C; ++j)
                    if (s.d.at(t, j) != 0 && abs(s.d.at(t, j)) < abs(s.d.at(mi, mj))) {
                        mi = t;
                        mj = j;
                    }
                s.swap_rows(t, mi);
                s.swap_cols(t, mj);
                continue;
            }
            int bad = -1;
            for (int i = t + 1; i < R && bad < 0; ++i)
                for (int j = t + 1; j < C; ++j)
                    if (s.d.at(i, j) % s.d.at(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            s.add_row(t, bad, 1);
        }
        if (s.d.at(t, t) < 0) s.negate_row(t);
    }
    SmithForm out{s.u, s.d, s.v, {}};
    for (int t = 0; t < std::min(R, C); ++t)
        if (s.d.at(t, t) != 0) out.diagonal.push_back(s.d.at(t, t));
    return out;
}

}  // namespace perc
