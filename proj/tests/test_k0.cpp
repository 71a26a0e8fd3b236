#include <doctest.h>

#include "support.hpp"

using namespace perc;
using perc::test::inst;

namespace {

// Rank over a large prime by plain elimination.
int rank_mod(std::vector<std::vector<long long>> rows) {
    const long long P = 1000003;
    auto md = [&](long long x) { return ((x % P) + P) % P; };
    auto pw = [&](long long b, long long e) {
        long long r = 1;
        for (b = md(b); e; e >>= 1, b = b * b % P)
            if (e & 1) r = r * b % P;
        return r;
    };
    int r = 0, cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    for (int col = 0; col < cols && r < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (md(rows[i][col]) != 0) piv = i;
        if (piv < 0) continue;
        std::swap(rows[piv], rows[r]);
        long long inv = pw(rows[r][col], P - 2);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || md(rows[i][col]) == 0) continue;
            long long f = md(rows[i][col]) * inv % P;
            for (int j = 0; j < cols; ++j) rows[i][j] = md(rows[i][j] - f * md(rows[r][j]));
        }
        ++r;
    }
    return r;
}

// Dimension vector restricted to vertices where no object of A lives; additive on
// conflations and constant along weak isomorphisms.
std::vector<std::vector<long long>> restricted_dims(const CategoryInstance& c, const K0Presentation& k) {
    int nv = static_cast<int>(c.q.vertices.size());
    std::vector<bool> keep(nv, true);
    for (int a : c.a_indecs())
        for (int v = 0; v < nv; ++v)
            if (c.reg.items[a].rep->dims[v] > 0) keep[v] = false;
    std::vector<std::vector<long long>> out;
    for (const auto& g : k.generators) {
        std::vector<long long> row;
        for (int v = 0; v < nv; ++v)
            if (keep[v]) row.push_back(c.reg.items[c.reg.index(g)].rep->dims[v]);
        out.push_back(row);
    }
    return out;
}

void check_against_oracle(const std::string& name, const K0Presentation& k, int want) {
    const auto& c = inst(name);
    auto phi = restricted_dims(c, k);
    for (const auto& rel : k.relations) {
        for (size_t v = 0; v < (phi.empty() ? 0 : phi[0].size()); ++v) {
            long long s = 0;
            for (size_t g = 0; g < rel.size(); ++g) s += rel[g] * phi[g][v];
            CHECK(s == 0);
        }
    }
    int n = static_cast<int>(k.generators.size());
    CHECK(n - rank_mod(k.relations) == k.free_rank);
    CHECK(rank_mod(phi) == want);
    CHECK(k.free_rank == want);
}

}  // namespace

TEST_CASE("K0 of rep(A4) is free on the simples") {
    Localizer L(inst("a4"));
    auto k = k0_waldhausen(L);
    check_against_oracle("a4", k, 4);
    CHECK(k.group_string() == "Z^4");
    CHECK(k0_quotient(L).free_rank == 4);
}

TEST_CASE("K0 of r3: Pb = Sa + Sb and Pc = Sb + Sc with Sa killed leaves rank two") {
    Localizer L(inst("r3"));
    check_against_oracle("r3", k0_waldhausen(L), 2);
    check_against_oracle("r3", k0_quotient(L), 2);
}

TEST_CASE("K0 of the Serre quotient by S1") {
    Localizer L(inst("serre"));
    auto w = k0_waldhausen(L);
    auto q = k0_quotient(L);
    check_against_oracle("serre", w, 3);
    check_against_oracle("serre", q, 3);
    CHECK(w.invariant_factors.empty());
    CHECK(q.group_string() == "Z^3");
}

TEST_CASE("presentation reduction keeps the group") {
    K0Presentation k;
    k.generators = {"a", "b", "c"};
    k.relations = {{2, 0, 0}, {0, 3, 0}, {2, 3, 0}, {-2, 0, 0}};
    k.origins = {"x", "y", "z", "w"};
    finish_presentation(k);
    CHECK(k.free_rank == 1);
    CHECK(k.invariant_factors == std::vector<std::string>{"6"});
    CHECK(k.group_string() == "Z + Z/6");
}
