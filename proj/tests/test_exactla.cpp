#include <doctest.h>

#include <numeric>
#include <random>

#include "perc/exactla.hpp"

using namespace perc;

namespace {

long long det_ll(std::vector<std::vector<long long>> a) {
    // Bareiss, exact for small integer matrices
    int n = static_cast<int>(a.size());
    long long sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[r], a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Invariant factors as quotients of determinantal divisors.
std::vector<long long> divisor_oracle(const std::vector<std::vector<long long>>& m) {
    int r = static_cast<int>(m.size()), c = static_cast<int>(m[0].size());
    std::vector<long long> dk = {1};
    for (int k = 1; k <= std::min(r, c); ++k) {
        long long g = 0;
        std::vector<int> rs(k), cs(k);
        std::function<void(int, int)> pick_cols;
        std::function<void(int, int)> pick_rows = [&](int i, int from) {
            if (i == k) {
                pick_cols(0, 0);
                return;
            }
            for (int x = from; x < r; ++x) {
                rs[i] = x;
                pick_rows(i + 1, x + 1);
            }
        };
        pick_cols = [&](int i, int from) {
            if (i == k) {
                std::vector<std::vector<long long>> sub(k, std::vector<long long>(k));
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) sub[a][b] = m[rs[a]][cs[b]];
                g = std::gcd(g, std::llabs(det_ll(sub)));
                return;
            }
            for (int x = from; x < c; ++x) {
                cs[i] = x;
                pick_cols(i + 1, x + 1);
            }
        };
        pick_rows(0, 0);
        if (g == 0) break;
        dk.push_back(g);
    }
    std::vector<long long> out;
    for (size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
    return out;
}

}  // namespace

TEST_CASE("modular arithmetic") {
    CHECK(modp(-1, 7) == 6);
    CHECK(modp(15, 7) == 1);
    CHECK(inv_mod(3, 7) == 5);
    CHECK(is_prime(7));
    CHECK_FALSE(is_prime(9));
}

TEST_CASE("rank, kernel and solving over F_7") {
    auto m = FieldMatrix::from_rows(7, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
    CHECK(rank(m) == 2);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    CHECK(static_cast<bool>(perc::apply(m, k[0]) == Vec{0, 0, 0}));
    auto s = solve_linear(m, {1, 2, 0});
    REQUIRE(s);
    CHECK(static_cast<bool>(perc::apply(m, *s) == Vec{1, 2, 0}));
    CHECK_FALSE(solve_linear(m, {1, 0, 0}));
    auto e = rref(m);
    CHECK(static_cast<bool>(e.pivots == std::vector<int>{0, 1}));
}

TEST_CASE("inverse of an invertible matrix") {
    auto m = FieldMatrix::from_rows(7, {{2, 1}, {1, 1}});
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK((m * *inv).is_identity());
    CHECK_FALSE(inverse(FieldMatrix::from_rows(7, {{1, 2}, {2, 4}})));
}

TEST_CASE("empty shapes") {
    FieldMatrix z(7, 0, 3);
    CHECK(kernel_basis(z).size() == 3);
    FieldMatrix w(7, 3, 0);
    CHECK(kernel_basis(w).empty());
    CHECK(solve_linear(w, {0, 0, 0}));
}

TEST_CASE("Smith normal form agrees with determinantal divisors") {
    std::vector<std::vector<std::vector<long long>>> cases = {
        {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}},
        {{1, -1, 0}, {0, 1, -1}, {1, 0, -1}},
        {{6, 0}, {0, 4}},
        {{0, 0}, {0, 0}},
    };
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
        std::vector<std::vector<long long>> m(r, std::vector<long long>(c));
        for (auto& row : m)
            for (auto& x : row) x = static_cast<long long>(rng() % 13) - 6;
        cases.push_back(m);
    }
    for (const auto& m : cases) {
        auto s = smith_normal_form(IntMatrix::from_rows(m));
        auto want = divisor_oracle(m);
        REQUIRE(s.diagonal.size() == want.size());
        for (size_t i = 0; i < want.size(); ++i) CHECK(s.diagonal[i] == want[i]);
        for (size_t i = 1; i < s.diagonal.size(); ++i) CHECK(s.diagonal[i] % s.diagonal[i - 1] == 0);
        auto a = IntMatrix::from_rows(m);
        CHECK(s.u * a * s.v == s.d);
        BigInt du = determinant(s.u), dv = determinant(s.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
    }
}

TEST_CASE("Smith normal form of a textbook matrix") {
    auto s = smith_normal_form(IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    REQUIRE(s.diagonal.size() == 3);
    CHECK(s.diagonal[0] == 2);
    CHECK(s.diagonal[1] == 6);
    CHECK(s.diagonal[2] == 12);
}
