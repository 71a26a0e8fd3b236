#include "perc/k0.hpp"

#include <set>

namespace perc {

namespace {

using Row = std::vector<long long>;

struct Builder {
    const CategoryInstance& c;
    std::vector<int> gens;       // registry indices
    std::vector<int> column;     // registry index -> generator column or -1
    std::set<Row> seen;
    K0Presentation out;

    explicit Builder(const CategoryInstance& cat) : c(cat), column(cat.n(), -1) {
        for (int w : c.occurring) {
            column[w] = static_cast<int>(gens.size());
            gens.push_back(w);
            out.generators.push_back(c.reg.items[w].name);
        }
    }

    Row vec(const Mult& m) const {
        Row r(gens.size(), 0);
        for (int i = 0; i < c.n(); ++i)
            if (m[i] != 0 && column[i] >= 0) r[column[i]] += m[i];
        return r;
    }

    void add(Row r, const std::string& origin) {
        size_t lead = 0;
        while (lead < r.size() && r[lead] == 0) ++lead;
        if (lead == r.size()) return;
        if (r[lead] < 0)
            for (auto& x : r) x = -x;
        if (!seen.insert(r).second) return;
        out.relations.push_back(std::move(r));
        out.origins.push_back(origin);
    }

    void add_diff(const Mult& a, const Mult& b, const std::string& origin) {
        Row r = vec(a), s = vec(b);
        for (size_t i = 0; i < r.size(); ++i) r[i] -= s[i];
        add(std::move(r), origin);
    }

    void conflations() {
        for (const auto& k : c.conflations()) {
            Row r = vec(k.y), x = vec(k.x), z = vec(k.z);
            for (size_t i = 0; i < r.size(); ++i) r[i] -= x[i] + z[i];
            add(std::move(r), "conflation " + c.mult_name(k.x) + " >-> " + c.mult_name(k.y) + " ->> " +
                                  c.mult_name(k.z));
        }
    }

    // Objects of C must generate the free group on the occurring indecs for the presentation to be faithful.
    void check_lattice() {
        std::vector<std::vector<long long>> rows;
        for (const auto& m : c.objects(std::min(c.size_bound, 2))) {
            if (total(m) == 0) continue;
            rows.push_back(vec(m));
        }
        if (gens.empty()) return;
        if (rows.empty()) {
            out.notes.push_back("no nonzero objects within the bound");
            return;
        }
        auto snf = smith_normal_form(IntMatrix::from_rows(rows));
        bool full = snf.diagonal.size() == gens.size();
        for (const auto& d : snf.diagonal) full = full && d == 1;
        if (!full) out.notes.push_back("objects within the bound do not generate the free group on the indecs");
    }
};

}  // namespace

std::string K0Presentation::group_string() const {
    std::string s;
    if (free_rank > 0) s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
    for (const auto& f : invariant_factors) s += (s.empty() ? "" : " + ") + std::string("Z/") + f;
    return s.empty() ? "0" : s;
}

void finish_presentation(K0Presentation& k) {
    int n = static_cast<int>(k.generators.size());
    k.invariant_factors.clear();
    if (k.relations.empty() || n == 0) {
        k.free_rank = n;
        return;
    }
    auto snf = smith_normal_form(IntMatrix::from_rows(k.relations));
    int nonzero = 0;
    for (const auto& d : snf.diagonal) {
        if (d == 0) continue;
        ++nonzero;
        BigInt a = d < 0 ? BigInt(-d) : d;
        if (a != 1) k.invariant_factors.push_back(a.str());
    }
    k.free_rank = n - nonzero;
}

json to_json(const K0Presentation& k) {
    return json{{"generators", k.generators},
                {"relations", k.relations},
                {"origins", k.origins},
                {"invariant_factors", k.invariant_factors},
                {"free_rank", k.free_rank},
                {"group", k.group_string()},
                {"notes", k.notes}};
}

K0Presentation k0_waldhausen(const Localizer& L) {
    const CategoryInstance& c = L.cat();
    if (!check_axiom(c, "R0*").holds) throw InputError("k0_waldhausen: the instance fails R0*", 1);
    Builder b(c);
    b.check_lattice();
    b.conflations();
    for (const auto& x : c.quant_objects())
        for (const auto& s : L.sources(x))
            if (s.depth > 0)
                b.add_diff(s.source, x, "weak isomorphism " + c.mult_name(s.source) + " -> " + c.mult_name(x));
    b.out.notes.push_back("generators are indec classes; split conflations identify [X+Y] with [X]+[Y]");
    finish_presentation(b.out);
    return b.out;
}

K0Presentation k0_quotient(const Localizer& L) {
    const CategoryInstance& c = L.cat();
    Builder b(c);
    b.check_lattice();
    b.conflations();
    std::vector<Mult> objs;
    for (const auto& m : c.quant_objects())
        if (total(m) > 0) objs.push_back(m);
    // test objects: indecs that are objects of C
    std::vector<Mult> tests;
    for (int w : c.occurring)
        if (c.admits(c.unit(w))) tests.push_back(c.unit(w));
    std::map<Mult, std::vector<int>> profile;
    for (const auto& x : objs) {
        auto& v = profile[x];
        for (const auto& t : tests) v.push_back(L.hom(t, x).dim);
        if (L.hom(x, x).dim == 0) b.add(b.vec(x), "zero in the quotient: " + c.mult_name(x));
    }
    for (size_t i = 0; i < objs.size(); ++i)
        for (size_t j = i + 1; j < objs.size(); ++j) {
            const Mult &x = objs[i], &y = objs[j];
            if (profile[x] != profile[y]) continue;
            bool found = false;
            for (const auto& s : L.sources(x)) {
                for (const auto& f : c.sample(s.source, y, 4).maps) {
                    bool iso = true;
                    for (const auto& t : tests) {
                        LocHom hs = L.hom(t, s.source), hy = L.hom(t, y);
                        if (hs.dim != hy.dim) {
                            iso = false;
                            break;
                        }
                        if (hs.dim == 0) continue;
                        auto m = L.post_matrix(f, hs, hy);
                        if (!m || rank(*m) != hs.dim) {
                            iso = false;
                            break;
                        }
                    }
                    if (iso) {
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) b.add_diff(x, y, "isomorphic in the quotient: " + c.mult_name(x) + " and " + c.mult_name(y));
        }
    b.out.notes.push_back("quotient isomorphisms detected by roofs whose numerator induces bijections on Hom from indecs");
    finish_presentation(b.out);
    return b.out;
}

}  // namespace perc
