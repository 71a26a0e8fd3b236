// Seeded property suite: each property draws 200 cases per corpus instance.
#include <doctest.h>

#include <functional>

#include "support.hpp"

using namespace perc;
using perc::test::inst;

namespace {

constexpr int kCases = 200;
const std::vector<std::string> kInstances = {"a4", "p3", "p4", "r3", "serre", "torsion"};

const Localizer& loc(const std::string& name) {
    static std::map<std::string, std::unique_ptr<Localizer>> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, std::make_unique<Localizer>(inst(name))).first;
    return *it->second;
}

struct Draw {
    const CategoryInstance& c;
    std::mt19937_64 rng;

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[rng() % v.size()];
    }
    Mult object() {
        auto objs = c.quant_objects();
        std::vector<Mult> nz;
        for (const auto& m : objs)
            if (total(m) > 0) nz.push_back(m);
        return pick(nz);
    }
    RepMorphism map(const Mult& a, const Mult& b) { return pick(c.sample(a, b, 16).maps); }
    RepMorphism map(const RepPtr& a, const RepPtr& b) {
        auto basis = c.hom(a, b);
        Vec coeffs;
        for (size_t i = 0; i < basis.size(); ++i) coeffs.push_back(static_cast<int>(rng() % c.p()));
        return linear_combination(c.q, a, b, basis, coeffs);
    }
    std::optional<int> extra_indec(const Mult& base) {
        std::vector<int> ok;
        for (int e : c.occurring) {
            Mult m = base;
            ++m[e];
            if (total(m) <= c.size_bound && c.admits(m)) ok.push_back(e);
        }
        if (ok.empty()) return std::nullopt;
        return pick(ok);
    }
};

// Runs body(draw) kCases times per instance; body returns false when the case could not be built.
void each_instance(const std::string& property, const std::function<bool(const std::string&)>& applies,
                   const std::function<bool(Draw&, const Localizer&)>& body) {
    for (const auto& n : kInstances) {
        if (!applies(n)) continue;
        const auto& L = loc(n);
        Draw d{L.cat(), L.cat().rng_for("property " + property)};
        int built = 0;
        for (int k = 0; k < kCases; ++k) {
            INFO(property << " on " << n << ", case " << k);
            if (body(d, L)) ++built;
        }
        INFO(property << " on " << n);
        CHECK(built > 0);
        MESSAGE(property << " on " << n << ": " << built << "/" << kCases << " cases built");
    }
}

bool any(const std::string&) { return true; }
// With A = 0 the weak isomorphisms are the isomorphisms and there is nothing to draw.
bool nonzero_a(const std::string& n) { return !inst(n).a_empty(); }
bool percolating(const std::string& n) { return loc(n).percolating(); }

}  // namespace

TEST_CASE("pullback lemma: left square is a pullback iff the outer rectangle is") {
    each_instance("pullback lemma", any, [](Draw& d, const Localizer&) {
        const auto& c = d.c;
        const auto& k = d.pick(c.conflations());
        auto g = d.map(d.object(), k.z);
        auto right = c.pullback(k.p, g);
        if (!right) return false;
        REQUIRE(c.is_pullback_in_C(right->first, right->second, k.p, g));
        auto h = d.map(d.object(), c.mult_of(g.source));
        auto left = c.pullback(right->second, h);
        if (!left) return false;
        auto outer_top = compose(right->first, left->first);
        auto gh = compose(g, h);
        bool l = c.is_pullback_in_C(left->first, left->second, right->second, h);
        bool o = c.is_pullback_in_C(outer_top, left->second, k.p, gh);
        CHECK(l);
        CHECK(l == o);
        // a corner with a superfluous summand still commutes but is neither
        if (auto e = d.extra_indec(c.mult_of(left->corner))) {
            auto ds = direct_sum(c.q, {left->corner, c.canon(c.unit(*e))});
            auto a = compose(left->first, ds.projections[0]);
            auto b = compose(left->second, ds.projections[0]);
            bool ln = c.is_pullback_in_C(a, b, right->second, h);
            bool on = c.is_pullback_in_C(compose(right->first, a), b, k.p, gh);
            CHECK_FALSE(ln);
            CHECK(ln == on);
        }
        return true;
    });
}

namespace {

struct PushoutVerdicts {
    bool pushout, extension, induced;
};

// Square A -i'-> B, A -f-> A', B -g-> B', A' -i-> B' with inflations i', i.
PushoutVerdicts pushout_verdicts(const CategoryInstance& c, const Conflation& k, const RepMorphism& f,
                                 const RepMorphism& g, const RepMorphism& i) {
    PushoutVerdicts v{};
    v.pushout = c.is_pushout_in_C(k.i, f, g, i);
    if (auto co = c.cokernel(i)) {
        auto u = solve_post(c, k.p, compose(co->map, g));
        v.extension = u && is_iso(*u) && c.is_conflation(i, co->map).ok;
    }
    auto mid = direct_sum(c.q, {f.target, k.i.target});
    auto col = column_morphism(c.q, mid, {f, k.i});
    auto row = row_morphism(c.q, mid, {scale(i, -1), g});
    try {
        v.induced = c.is_conflation(col, row).ok;
    } catch (const InputError&) {
        v.induced = false;
    }
    return v;
}

}  // namespace

TEST_CASE("pushout of inflations: pushout, extension and induced conflation agree") {
    each_instance("pushout three-way", any, [](Draw& d, const Localizer&) {
        const auto& c = d.c;
        const auto& k = d.pick(c.conflations());
        auto f = d.map(k.x, d.object());
        auto po = c.pushout(k.i, f);
        if (!po || !c.is_inflation(po->second)) return false;
        if (total(mult_add(c.mult_of(f.target), k.y)) > c.size_bound) return false;
        auto v = pushout_verdicts(c, k, f, po->first, po->second);
        CHECK(v.pushout);
        CHECK(v.extension);
        CHECK(v.induced);
        if (auto e = d.extra_indec(c.mult_of(po->corner))) {
            auto ds = direct_sum(c.q, {po->corner, c.canon(c.unit(*e))});
            auto i = compose(ds.inclusions[0], po->second);
            auto g = compose(ds.inclusions[0], po->first);
            if (c.is_inflation(i)) {
                auto w = pushout_verdicts(c, k, f, g, i);
                CHECK_FALSE(w.pushout);
                CHECK(w.pushout == w.extension);
                CHECK(w.extension == w.induced);
            }
        }
        return true;
    });
}

TEST_CASE("the pullback of an inflation along a deflation is an inflation") {
    each_instance("pullback of inflation", any, [](Draw& d, const Localizer&) {
        const auto& c = d.c;
        const auto& k1 = d.pick(c.conflations());
        std::vector<const Conflation*> onto;
        for (const auto& k : c.conflations())
            if (k.z == k1.y) onto.push_back(&k);
        if (onto.empty()) return false;
        const auto* k2 = d.pick(onto);
        auto sq = c.pullback(k1.i, k2->p);
        REQUIRE(sq);
        CHECK(c.is_inflation(sq->second));
        return true;
    });
}

TEST_CASE("pulling a weak isomorphism back along a deflation gives a weak isomorphism") {
    each_instance("weak iso pullback", nonzero_a, [](Draw& d, const Localizer& L) {
        const auto& c = d.c;
        const auto& k = d.pick(c.conflations());
        const auto& srcs = L.sources(k.z);
        const auto& s = d.pick(srcs);
        if (s.depth == 0) return false;
        RepMorphism def = k.p;
        for (auto st = s.chain.steps.rbegin(); st != s.chain.steps.rend(); ++st) {
            auto sq = c.pullback(def, st->map);
            REQUIRE(sq);
            CHECK(L.weak_iso_step(sq->first));
            CHECK(c.is_deflation(sq->second));
            def = sq->second;
        }
        return true;
    });
}

TEST_CASE("composites of two A-deflations are A-deflations") {
    auto p1 = [](const std::string& n) {
        const auto& c = inst(n);
        return !c.a_empty() && check_sub_axiom(c, c.a_mask, "P1").holds;
    };
    each_instance("composition of A-deflations", p1, [](Draw& d, const Localizer& L) {
        const auto& c = d.c;
        std::vector<WeakIsoStep> bs;
        for (const auto& st : L.one_steps(d.object()))
            if (!st.inflation) bs.push_back(st);
        if (bs.empty()) return false;
        const auto& b = d.pick(bs);
        std::vector<WeakIsoStep> as;
        for (const auto& st : L.one_steps(c.mult_of(b.map.source)))
            if (!st.inflation) as.push_back(st);
        if (as.empty()) return false;
        const auto& a = d.pick(as);
        auto ba = compose(b.map, a.map);
        auto k = c.deflation_conflation(ba);
        REQUIRE(k);
        CHECK(c.in_A(k->x));
        return true;
    });
}

TEST_CASE("weak isomorphisms form a right multiplicative system") {
    each_instance("RMS1-3", percolating, [](Draw& d, const Localizer& L) {
        const auto& c = d.c;
        // RMS1: composites of chains are chains
        auto x = d.object();
        const auto& s = d.pick(L.sources(x));
        const auto& u = d.pick(L.sources(s.source));
        auto su = chain_then(u.chain, s.chain);
        CHECK(L.verify_chain(su));
        // RMS2: completing g: Y -> X against s
        auto g = d.map(d.object(), x);
        auto o = L.ore(s.chain, g);
        REQUIRE(o);
        CHECK(L.verify_chain(o->first));
        CHECK(equal(compose(s.chain.composite, o->second), compose(g, o->first.composite)));
        // RMS3: s∘f = 0 forces f∘t = 0 for some weak isomorphism t
        auto y = s.source;
        auto X = c.canon(d.object());
        auto Y = c.canon(y);
        auto basis = c.hom(X, Y);
        if (basis.empty()) return true;
        std::vector<Vec> cols;
        for (const auto& b : basis) cols.push_back(flatten(compose(s.chain.composite, b)));
        auto ker = kernel_basis(FieldMatrix::from_columns(c.p(), static_cast<int>(cols[0].size()), cols));
        if (ker.empty()) return true;
        Vec coeffs(basis.size(), 0);
        for (const auto& v : ker) {
            int t = static_cast<int>(d.rng() % c.p());
            for (size_t i = 0; i < v.size(); ++i) coeffs[i] = modp(coeffs[i] + t * v[i], c.p());
        }
        auto f = linear_combination(c.q, X, Y, basis, coeffs);
        REQUIRE(is_zero(compose(s.chain.composite, f)));
        bool found = false;
        for (const auto& t : L.sources(c.mult_of(X)))
            if (is_zero(compose(f, t.chain.composite))) {
                found = true;
                break;
            }
        CHECK(found);
        return true;
    });
}

TEST_CASE("roof equivalence is transitive") {
    each_instance("roof transitivity", percolating, [](Draw& d, const Localizer& L) {
        const auto& c = d.c;
        auto x = d.object(), y = d.object();
        const auto& s = d.pick(L.sources(x));
        auto Y = c.canon(y);
        auto f = d.map(s.chain.source, Y);
        std::vector<Roof> roofs;
        roofs.push_back({s.chain, f});
        const auto& u = d.pick(L.sources(s.source));
        roofs.push_back({chain_then(u.chain, s.chain), compose(f, u.chain.composite)});
        const auto& zs = L.zero_space(s.source, y);
        RepMorphism z = zero_morphism(c.q, s.chain.source, Y);
        for (const auto& b : zs) z = add(z, scale(b, static_cast<int>(d.rng() % c.p())));
        roofs.push_back({s.chain, add(f, z)});
        const auto& s2 = d.pick(L.sources(x));
        roofs.push_back({s2.chain, d.map(s2.chain.source, Y)});
        size_t n = roofs.size();
        std::vector<std::vector<int>> eq(n, std::vector<int>(n, -1));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                auto r = L.roof_equal(roofs[a], roofs[b]);
                if (r.determinate) eq[a][b] = r.equal ? 1 : 0;
            }
        for (size_t a = 0; a < n; ++a) CHECK(eq[a][a] == 1);
        CHECK(eq[0][1] == 1);
        CHECK(eq[0][2] == 1);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                if (eq[a][b] >= 0 && eq[b][a] >= 0) CHECK(eq[a][b] == eq[b][a]);
                for (size_t e = 0; e < n; ++e)
                    if (eq[a][b] == 1 && eq[b][e] == 1) CHECK(eq[a][e] != 0);
            }
        return true;
    });
}

TEST_CASE("lifting conflations along weak isomorphisms meets its contract") {
    each_instance("lift contract", percolating, [](Draw& d, const Localizer& L) {
        const auto& c = d.c;
        const auto& k = d.pick(c.conflations());
        const auto& s = d.pick(L.sources(k.y));
        auto r = L.lift_conflation(k, s.chain);
        std::string why;
        CHECK_MESSAGE(verify_lift(L, k, s.chain, r, &why), why);
        return true;
    });
}

TEST_CASE("zero in the quotient, factoring through A and killing by an A-inflation agree") {
    each_instance("zero three-way", percolating, [](Draw& d, const Localizer& L) {
        const auto& c = d.c;
        auto xm = d.object();
        auto X = c.canon(xm), Y = c.canon(d.object());
        RepMorphism f = zero_morphism(c.q, X, Y);
        if (d.rng() % 2 == 0) {
            for (const auto& b : ideal_span(c, X, Y, c.a_mask)) f = add(f, scale(b, static_cast<int>(d.rng() % c.p())));
        } else {
            f = d.map(X, Y);
        }
        bool quotient = L.is_zero_in_quotient(f).zero;
        bool through = static_cast<bool>(factors_through_sub(c, f));
        // constructive: X ->> A' through which f factors, then its kernel
        bool constructed = is_zero(f);
        if (auto p2 = p2_factor(c, f, c.a_mask)) {
            if (auto k = c.deflation_conflation(p2->deflation)) {
                auto st = L.weak_iso_step(k->i);
                constructed = constructed || (st && is_zero(compose(f, k->i)));
            }
        }
        // search: A-inflations M >-> X drawn from the kernel of post-composition with f
        bool searched = is_zero(f);
        Mult dx = c.dims_of(xm);
        for (const auto& a : c.a_objects(c.size_bound)) {
            if (searched || total(a) == 0) continue;
            Mult dm = dx, da = c.dims_of(a);
            bool fits = true;
            for (size_t v = 0; v < dm.size(); ++v) fits = fits && (dm[v] -= da[v]) >= 0;
            if (!fits) continue;
            for (const auto& m : c.objects(c.size_bound)) {
                if (searched || c.dims_of(m) != dm) continue;
                auto M = c.canon(m);
                if (total(m) == 0) {
                    auto st = L.weak_iso_step(zero_morphism(c.q, M, X));
                    searched = st && st->inflation;
                    continue;
                }
                auto basis = c.hom(M, X);
                if (basis.empty()) continue;
                std::vector<Vec> cols;
                for (const auto& b : basis) cols.push_back(flatten(compose(f, b)));
                auto ker = kernel_basis(FieldMatrix::from_columns(c.p(), static_cast<int>(cols[0].size()), cols));
                for (int tries = 0; tries < 24 && !searched && !ker.empty(); ++tries) {
                    Vec coeffs(basis.size(), 0);
                    for (const auto& v : ker) {
                        int t = static_cast<int>(d.rng() % c.p());
                        for (size_t i = 0; i < v.size(); ++i) coeffs[i] = modp(coeffs[i] + t * v[i], c.p());
                    }
                    auto t = linear_combination(c.q, M, X, basis, coeffs);
                    if (!is_injective(t)) continue;
                    auto st = L.weak_iso_step(t);
                    searched = st && st->inflation;
                }
            }
        }
        CHECK(quotient == through);
        CHECK(through == constructed);
        CHECK(constructed == searched);
        return true;
    });
}
