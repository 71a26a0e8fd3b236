#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace perc {

struct InputError : std::runtime_error {
    int code;
    explicit InputError(const std::string& what, int c = 2) : std::runtime_error(what), code(c) {}
};

using Vec = std::vector<int>;

int modp(long long a, int p);
int inv_mod(int a, int p);
bool is_prime(int p);

// Dense matrix over F_p, row-major.
class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(int p, int rows, int cols);

    static FieldMatrix identity(int p, int n);
    static FieldMatrix from_rows(int p, const std::vector<std::vector<long long>>& rows);
    static FieldMatrix from_columns(int p, int rows, const std::vector<Vec>& cols);
    static FieldMatrix column(int p, const Vec& v);

    int prime() const { return p_; }
    int rows() const { return r_; }
    int cols() const { return c_; }

    int operator()(int i, int j) const { return e_[static_cast<size_t>(i) * c_ + j]; }
    void set(int i, int j, long long v) { e_[static_cast<size_t>(i) * c_ + j] = modp(v, p_); }
    const std::vector<int>& data() const { return e_; }

    Vec col(int j) const;
    Vec row(int i) const;
    bool is_zero() const;
    bool is_identity() const;

    FieldMatrix transpose() const;
    FieldMatrix block(int r0, int c0, int nr, int nc) const;
    void put(int r0, int c0, const FieldMatrix& b);

    bool operator==(const FieldMatrix& o) const {
        return r_ == o.r_ && c_ == o.c_ && e_ == o.e_;
    }
    bool operator!=(const FieldMatrix& o) const { return !(*this == o); }

private:
    int p_ = 7;
    int r_ = 0;
    int c_ = 0;
    std::vector<int> e_;
};

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix scaled(const FieldMatrix& a, int s);
Vec apply(const FieldMatrix& m, const Vec& v);

FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix block_diag(const FieldMatrix& a, const FieldMatrix& b);

struct Echelon {
    FieldMatrix r;
    std::vector<int> pivots;
};

Echelon rref(const FieldMatrix& m);
int rank(const FieldMatrix& m);
std::vector<Vec> kernel_basis(const FieldMatrix& m);
// columns span the null space
FieldMatrix kernel_matrix(const FieldMatrix& m);
// rows span the left null space
FieldMatrix cokernel_matrix(const FieldMatrix& m);
std::optional<Vec> solve_linear(const FieldMatrix& m, const Vec& b);
// X with a*X = b
std::optional<FieldMatrix> solve_matrix(const FieldMatrix& a, const FieldMatrix& b);
std::optional<FieldMatrix> inverse(const FieldMatrix& m);
// Basis of the column space, as a matrix with independent columns.
FieldMatrix column_space(const FieldMatrix& m);

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : r_(rows), c_(cols), e_(static_cast<size_t>(rows) * cols) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    BigInt& at(int i, int j) { return e_[static_cast<size_t>(i) * c_ + j]; }
    const BigInt& at(int i, int j) const { return e_[static_cast<size_t>(i) * c_ + j]; }
    bool operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && e_ == o.e_; }

private:
    int r_ = 0;
    int c_ = 0;
    std::vector<BigInt> e_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
BigInt determinant(const IntMatrix& m);

struct SmithForm {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
    std::vector<BigInt> diagonal;  // nonzero invariant factors, d1 | d2 | ...
};

// U*m*V = D
SmithForm smith_normal_form(const IntMatrix& m);

}  // namespace perc
