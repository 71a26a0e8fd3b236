#include <doctest.h>

#include "support.hpp"

using namespace perc;
using perc::test::inst;

namespace {

// Support interval of an indec of the linearly oriented A4 (arrows point towards vertex 1).
std::pair<int, int> interval(const Representation& r) {
    int lo = -1, hi = -1;
    for (int v = 0; v < static_cast<int>(r.dims.size()); ++v)
        if (r.dims[v] > 0) {
            if (lo < 0) lo = v;
            hi = v;
        }
    return {lo, hi};
}

// Hom([a,b],[c,d]) is one-dimensional iff a <= c <= b <= d: the image is a quotient [c,b] of the
// source and a submodule [c,b] of the target.
int interval_hom(std::pair<int, int> x, std::pair<int, int> y) {
    return x.first <= y.first && y.first <= x.second && x.second <= y.second ? 1 : 0;
}

}  // namespace

TEST_CASE("hom dimensions of rep(A4) match interval combinatorics") {
    const auto& c = inst("a4");
    for (int i = 0; i < c.n(); ++i)
        for (int j = 0; j < c.n(); ++j) {
            int want = interval_hom(interval(*c.reg.items[i].rep), interval(*c.reg.items[j].rep));
            INFO(c.reg.items[i].name << " -> " << c.reg.items[j].name);
            CHECK(c.hom_dim(i, j) == want);
        }
}

TEST_CASE("hom basis elements are intertwiners") {
    const auto& c = inst("p4");
    for (int i = 0; i < c.n(); ++i)
        for (int j = 0; j < c.n(); ++j)
            for (const auto& f : c.indec_hom(i, j)) CHECK(is_intertwiner(c.q, f));
}

TEST_CASE("kernel and cokernel of P2 -> P3") {
    const auto& c = inst("a4");
    auto f = perc::test::only_map(c, "P2", "P3");
    CHECK(is_injective(f));
    auto k = kernel_morphism(c.q, f);
    CHECK(k.object->total_dim() == 0);
    auto co = cokernel_morphism(c.q, f);
    CHECK(static_cast<bool>(co.object->dims == std::vector<int>{0, 0, 1, 0}));
    CHECK(is_zero(compose(co.map, f)));
}

TEST_CASE("image factorization recomposes") {
    const auto& c = inst("a4");
    auto f = perc::test::only_map(c, "P3", "I2");
    auto im = image_factorization(c.q, f);
    CHECK(equal(compose(im.mono, im.epi), f));
    CHECK(is_surjective(im.epi));
    CHECK(is_injective(im.mono));
    CHECK(static_cast<bool>(im.image->dims == std::vector<int>{0, 1, 1, 0}));
}

TEST_CASE("decomposition recovers multiplicities of a direct sum") {
    const auto& c = inst("a4");
    Mult m = c.parse_mult("2*S2+P3+I3");
    auto ds = direct_sum(c.q, {c.canon(c.parse_mult("I3")), c.canon(c.parse_mult("S2")), c.canon(c.parse_mult("P3")),
                               c.canon(c.parse_mult("S2"))});
    auto d = decompose(c.q, c.reg, ds.object);
    CHECK(d.mult == m);
    CHECK(is_iso(d.to_sum));
    CHECK(equal(compose(d.from_sum, d.to_sum), identity_morphism(c.q, ds.object)));
}

TEST_CASE("isomorphism test distinguishes dimension-equal modules") {
    const auto& c = inst("a4");
    std::mt19937_64 rng(3);
    auto a = c.canon(c.parse_mult("S1+S2"));
    auto b = c.canon(c.parse_mult("P2"));
    CHECK_FALSE(is_isomorphic(c.q, a, b, rng).iso);
    CHECK(is_isomorphic(c.q, b, b, rng).iso);
}

TEST_CASE("pullback and pushout squares commute") {
    const auto& c = inst("a4");
    auto f = perc::test::only_map(c, "P3", "I2");
    auto g = perc::test::only_map(c, "S2", "I2");
    auto pb = pullback(c.q, f, g);
    CHECK(equal(compose(f, pb.first), compose(g, pb.second)));
    auto i = perc::test::only_map(c, "P2", "P3");
    auto h = perc::test::only_map(c, "P2", "S2");
    auto po = pushout(c.q, i, h);
    CHECK(equal(compose(po.first, i), compose(po.second, h)));
    CHECK(static_cast<bool>(po.corner->dims == std::vector<int>{0, 1, 1, 0}));
}

TEST_CASE("relation-violating representation is rejected") {
    const auto& c = inst("p4");
    Representation r;
    r.dims = {1, 1, 1, 1};
    for (size_t a = 0; a < c.q.arrows.size(); ++a) r.maps.push_back(FieldMatrix::from_rows(7, {{1}}));
    CHECK_THROWS_WITH_AS(validate_rep(c.q, r), doctest::Contains("gamma_beta_alpha"), InputError);
}
