#include <doctest.h>

#include <regex>

#include "support.hpp"

using namespace perc;
using perc::test::inst;

namespace {

std::pair<int, int> support(const Representation& r, int from) {
    int lo = -1, hi = -1;
    for (int v = from; v < static_cast<int>(r.dims.size()); ++v)
        if (r.dims[v] > 0) {
            if (lo < 0) lo = v;
            hi = v;
        }
    return {lo, hi};
}

}  // namespace

TEST_CASE("restriction to vertices 2..4 follows interval combinatorics") {
    const auto& c = inst("serre");
    for (int i = 0; i < c.n(); ++i)
        for (int j = 0; j < c.n(); ++j) {
            auto x = support(*c.reg.items[i].rep, 1), y = support(*c.reg.items[j].rep, 1);
            int want = 0;
            if (x.first >= 0 && y.first >= 0)
                want = x.first <= y.first && y.first <= x.second && x.second <= y.second ? 1 : 0;
            INFO(c.reg.items[i].name << " -> " << c.reg.items[j].name);
            CHECK(restricted_hom_dim(c, {0}, i, j) == want);
        }
}

TEST_CASE("report json survives a round trip") {
    auto r = run_lochom(inst("r3"), "Pb", "Pc", 2);
    auto j = to_json(r);
    CHECK(to_json(parse_report(j)) == j);
    CHECK(j["lochoms"].size() == 1);
}

TEST_CASE("identical runs give identical json") {
    auto a = to_json(run_classify(inst("p3"))).dump();
    auto b = to_json(run_classify(inst("p3"))).dump();
    CHECK(a == b);
}

TEST_CASE("human rendering lists every fact") {
    auto r = run_check(inst("a4"), {"R0", "R1"});
    auto s = render_human(r);
    CHECK(s.find("R0") != std::string::npos);
    CHECK(s.find("R1") != std::string::npos);
}

TEST_CASE("dot export has one node per indec") {
    const auto& c = inst("a4");
    auto dot = export_dot(c);
    std::regex node("\\[label=\"[^\"]*\\\\n");
    auto n = std::distance(std::sregex_iterator(dot.begin(), dot.end(), node), std::sregex_iterator());
    CHECK(n == c.n());
    CHECK(dot.find("style=filled") == std::string::npos);
    CHECK(export_dot(inst("serre")).find("\"S1\" [label=\"S1\\n") != std::string::npos);
}

TEST_CASE("lift command resolves its arguments") {
    const auto& c = inst("r3");
    auto r = run_lift(c, "#0", c.mult_name(c.conflations()[0].y));
    CHECK(r.ok());
    CHECK_THROWS_AS(run_lift(c, "#100000", "Pb"), InputError);
}

TEST_CASE("unknown demo is an input error") {
    CHECK_THROWS_AS(run_demo("nope", RunOptions{}), InputError);
}

TEST_CASE("options override the spec") {
    RunOptions o;
    o.bound = 3;
    o.depth = 1;
    o.seed = 9;
    auto c = load_instance("r3", o);
    CHECK(c->size_bound == 3);
    CHECK(c->depth == 1);
    CHECK(c->seed == 9);
    o.op = true;
    auto d = load_instance("r3", o);
    CHECK(fingerprint(spec_to_json(*d)) != fingerprint(spec_to_json(*c)));
}
