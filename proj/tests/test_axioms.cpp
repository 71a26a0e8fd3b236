#include <doctest.h>

#include "support.hpp"

using namespace perc;
using perc::test::inst;
using perc::test::M;
using perc::test::only_map;

namespace {

const Classification& classified(const std::string& name) {
    static std::map<std::string, Classification> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, classify_subcategory(inst(name))).first;
    return it->second;
}

std::vector<bool> mask_of(const CategoryInstance& c, const std::vector<std::string>& names) {
    std::vector<bool> m(c.n(), false);
    for (const auto& n : names) m[c.reg.index(n)] = true;
    return m;
}

}  // namespace

TEST_CASE("rep(A4) with all kernel-cokernel pairs satisfies the exact axioms") {
    for (const auto& r : check_exact_axioms(inst("a4"))) {
        INFO(r.id);
        CHECK(r.holds);
    }
}

TEST_CASE("p3: P3 fails on the composite P2 >-> P3 -> I2") {
    const auto& cl = classified("p3");
    CHECK(cl.holds("P1"));
    CHECK(cl.holds("P2"));
    CHECK(cl.holds("P4"));
    CHECK_FALSE(cl.holds("P3"));
    const auto& w = cl.get("P3").witness;
    CHECK(w["inflation"]["source"] == "P2");
    CHECK(w["inflation"]["target"] == "P3");
    CHECK(w["map"]["target"] == "I2");
    CHECK_FALSE(cl.labels.at("deflation-percolating"));
}

TEST_CASE("p3: the composite through P3 factors through A") {
    const auto& c = inst("p3");
    auto f = compose(only_map(c, "P3", "I2"), only_map(c, "P2", "P3"));
    auto fac = factor_through(c, f, c.a_mask);
    REQUIRE(fac);
    CHECK(c.in_A(fac->via));
    CHECK(equal(compose(fac->second, fac->first), f));
}

TEST_CASE("p4: P4 fails through tP2 -> S3") {
    const auto& cl = classified("p4");
    for (const char* id : {"P1", "P2", "P3"}) {
        INFO(id);
        CHECK(cl.holds(id));
    }
    CHECK_FALSE(cl.holds("P4"));
    CHECK(cl.get("P4").witness["induced"]["source"] == "tP2");
    CHECK(cl.get("P4").witness["induced"]["target"] == "S3");
}

TEST_CASE("r3: add{Sa} is admissibly and strongly deflation-percolating") {
    const auto& cl = classified("r3");
    CHECK(cl.labels.at("admissibly deflation-percolating"));
    CHECK(cl.labels.at("strongly deflation-percolating"));
}

TEST_CASE("torsion: cohereditary torsion pair, F percolating but not right special") {
    const auto& c = inst("torsion");
    REQUIRE(c.torsion);
    auto rs = check_torsion_pair(c, c.torsion->first, c.torsion->second);
    std::map<std::string, bool> v;
    for (const auto& r : rs) v[r.id] = r.holds;
    CHECK(v["TorsionPair"]);
    CHECK(v["Cohereditary"]);
    const auto& cl = classified("torsion");
    CHECK(cl.labels.at("deflation-percolating"));
    CHECK_FALSE(cl.holds("RightSpecial"));
    CHECK(cl.get("RightSpecial").witness["inflation"]["source"] == "X");
    CHECK(cl.get("RightSpecial").witness["inflation"]["target"] == "I2");
}

TEST_CASE("the zero subcategory satisfies every percolating axiom") {
    const auto& c = inst("a4");
    auto cl = classify_subcategory(c, std::vector<bool>(c.n(), false));
    for (const char* id : {"P1", "P2", "P3", "P4", "A1", "A2", "A3"}) {
        INFO(id);
        CHECK(cl.holds(id));
    }
}

TEST_CASE("a non-Serre subcategory fails P1") {
    // P2 is an extension of S2 by S1, and add{S1, S2} does not contain it
    const auto& c = inst("a4");
    CHECK_FALSE(check_sub_axiom(c, mask_of(c, {"S1", "S2"}), "P1").holds);
    CHECK(check_sub_axiom(c, mask_of(c, {"S1", "P2", "S2"}), "P1").holds);
}

TEST_CASE("ideal span is the exact space of maps through A") {
    const auto& c = inst("a4");
    auto m = mask_of(c, {"S2"});
    auto x = c.canon(M(c, "P2")), y = c.canon(M(c, "I2"));
    // P2 -> I2 has image S2, so it factors through S2
    CHECK(ideal_span(c, x, y, m).size() == 1);
    auto z = c.canon(M(c, "P3"));
    // P3 -> I2 has image tP2, which is not in add{S2}
    CHECK(ideal_span(c, z, y, m).empty());
}

TEST_CASE("solve_pre and solve_post") {
    const auto& c = inst("a4");
    auto i = only_map(c, "S1", "P2");
    auto f = compose(i, scale(identity_morphism(c.q, c.canon(M(c, "S1"))), 3));
    auto h = solve_pre(c, i, f);
    REQUIRE(h);
    CHECK(equal(compose(i, *h), f));
    auto p = only_map(c, "P2", "S2");
    auto g = compose(only_map(c, "S2", "I2"), p);
    auto q = solve_post(c, p, g);
    REQUIRE(q);
    CHECK(equal(compose(*q, p), g));
    CHECK_FALSE(solve_post(c, only_map(c, "S1", "P2"), identity_morphism(c.q, c.canon(M(c, "S1")))));
}

TEST_CASE("verdict tables are consistent with the implications") {
    for (const char* n : {"p3", "p4", "r3", "serre", "torsion"}) {
        for (const auto& x : cross_theorem_checks(inst(n), classified(n))) {
            INFO(n << ": " << x.name << " " << x.detail);
            CHECK(x.consistent);
        }
    }
}

TEST_CASE("quasi-abelian recognition on the serre instance") {
    auto r = check_qa_recognition(inst("serre"));
    CHECK(r.applicable);
    CHECK(r.holds);
}

TEST_CASE("report json round trip") {
    const auto& r = classified("p3").get("P3");
    auto back = report_from_json(to_json(r));
    CHECK(to_json(back) == to_json(r));
}
