#include "perc/confcat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace perc {

struct CategoryInstance::Cache {
    std::recursive_mutex mu;
    std::map<Mult, RepPtr> canon;
    std::unordered_map<const Representation*, Mult> rev;
    std::map<std::pair<int, int>, std::vector<RepMorphism>> ihom;
    std::map<int, std::vector<Mult>> objects;
    std::optional<std::vector<Conflation>> conflations;
    std::optional<std::vector<Conflation>> split;
};

CategoryInstance::CategoryInstance() : cache_(std::make_shared<Cache>()) {}

bool dims_leq(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mult mult_add(const Mult& a, const Mult& b) {
    Mult c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

int total(const Mult& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool ObjectPredicate::admits(const Mult& m) const {
    switch (mode) {
        case PredicateMode::All:
            return true;
        case PredicateMode::KaroubiExclude:
            for (int e : excluded)
                if (m[e] > 0) return false;
            return true;
        case PredicateMode::ExcludeShapes:
            for (const auto& s : shapes) {
                bool match = true;
                for (size_t i = 0; i < m.size() && match; ++i) {
                    if (static_cast<int>(i) == s.wildcard) continue;
                    auto it = s.counts.find(static_cast<int>(i));
                    int want = it == s.counts.end() ? 0 : it->second;
                    if (m[i] != want) match = false;
                }
                if (match) return false;
            }
            return true;
    }
    return true;
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::AllKernelCokernel: return "AllKernelCokernel";
        case Strategy::AmbientExact: return "AmbientExact";
        case Strategy::GeneratedBy: return "GeneratedBy";
    }
    return "?";
}

Mult CategoryInstance::unit(int i) const {
    Mult m = zero_mult();
    m[i] = 1;
    return m;
}

bool CategoryInstance::in_A(const Mult& m) const {
    for (int i = 0; i < n(); ++i)
        if (m[i] > 0 && !a_mask[i]) return false;
    return admits(m);
}

bool CategoryInstance::a_empty() const {
    return std::none_of(a_mask.begin(), a_mask.end(), [](bool b) { return b; });
}

std::vector<int> CategoryInstance::a_indecs() const {
    std::vector<int> out;
    for (int i = 0; i < n(); ++i)
        if (a_mask[i]) out.push_back(i);
    return out;
}

RepPtr CategoryInstance::canon(const Mult& m) const {
    std::lock_guard<std::recursive_mutex> lk(cache_->mu);
    auto it = cache_->canon.find(m);
    if (it != cache_->canon.end()) return it->second;
    RepPtr r = canonical_sum(q, reg, m);
    cache_->canon.emplace(m, r);
    cache_->rev.emplace(r.get(), m);
    return r;
}

std::optional<Mult> CategoryInstance::canonical_mult(const RepPtr& x) const {
    std::lock_guard<std::recursive_mutex> lk(cache_->mu);
    auto it = cache_->rev.find(x.get());
    if (it == cache_->rev.end()) return std::nullopt;
    return it->second;
}

Decomposition CategoryInstance::canonicalize(const RepPtr& x) const {
    if (auto m = canonical_mult(x)) return {*m, identity_morphism(q, x), identity_morphism(q, x)};
    Decomposition d = decompose(q, reg, x);
    RepPtr c = canon(d.mult);
    d.to_sum.target = c;
    d.from_sum.source = c;
    return d;
}

Mult CategoryInstance::mult_of(const RepPtr& x) const {
    if (auto m = canonical_mult(x)) return *m;
    return canonicalize(x).mult;
}

bool CategoryInstance::in_C(const RepPtr& x) const {
    try {
        return admits(mult_of(x));
    } catch (const InputError&) {
        return false;
    }
}

const std::vector<RepMorphism>& CategoryInstance::indec_hom(int i, int j) const {
    std::lock_guard<std::recursive_mutex> lk(cache_->mu);
    auto key = std::make_pair(i, j);
    auto it = cache_->ihom.find(key);
    if (it != cache_->ihom.end()) return it->second;
    auto basis = hom_basis(q, reg.items[i].rep, reg.items[j].rep);
    return cache_->ihom.emplace(key, std::move(basis)).first->second;
}

int CategoryInstance::hom_dim(const Mult& a, const Mult& b) const {
    int d = 0;
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j)
            if (a[i] && b[j]) d += a[i] * b[j] * hom_dim(i, j);
    return d;
}

namespace {

std::vector<int> slot_list(const Mult& m) {
    std::vector<int> s;
    for (size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k) s.push_back(static_cast<int>(i));
    return s;
}

int span_rank(int p, const std::vector<Vec>& vs) {
    if (vs.empty() || vs.front().empty()) return 0;
    return rank(FieldMatrix::from_columns(p, static_cast<int>(vs.front().size()), vs));
}

Vec concat(Vec a, const Vec& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

std::vector<RepMorphism> CategoryInstance::hom(const Mult& a, const Mult& b) const {
    RepPtr x = canon(a), y = canon(b);
    auto sa = slot_list(a), sb = slot_list(b);
    std::vector<std::vector<int>> offa(sa.size(), std::vector<int>(q.nv())), offb(sb.size(), std::vector<int>(q.nv()));
    for (int v = 0; v < q.nv(); ++v) {
        int o = 0;
        for (size_t s = 0; s < sa.size(); ++s) {
            offa[s][v] = o;
            o += reg.items[sa[s]].rep->dims[v];
        }
        o = 0;
        for (size_t t = 0; t < sb.size(); ++t) {
            offb[t][v] = o;
            o += reg.items[sb[t]].rep->dims[v];
        }
    }
    std::vector<RepMorphism> out;
    for (size_t s = 0; s < sa.size(); ++s)
        for (size_t t = 0; t < sb.size(); ++t)
            for (const auto& g : indec_hom(sa[s], sb[t])) {
                RepMorphism f = zero_morphism(q, x, y);
                for (int v = 0; v < q.nv(); ++v) f.maps[v].put(offb[t][v], offa[s][v], g.maps[v]);
                out.push_back(std::move(f));
            }
    return out;
}

std::vector<RepMorphism> CategoryInstance::hom(const RepPtr& x, const RepPtr& y) const {
    auto a = canonical_mult(x), b = canonical_mult(y);
    if (a && b) return hom(*a, *b);
    return hom_basis(q, x, y);
}

std::vector<Mult> CategoryInstance::objects(int max_summands) const {
    {
        std::lock_guard<std::recursive_mutex> lk(cache_->mu);
        auto it = cache_->objects.find(max_summands);
        if (it != cache_->objects.end()) return it->second;
    }
    std::vector<Mult> out;
    Mult cur = zero_mult();
    std::function<void(size_t, int)> rec = [&](size_t k, int left) {
        if (k == occurring.size()) {
            if (admits(cur)) out.push_back(cur);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            cur[occurring[k]] = c;
            rec(k + 1, left - c);
        }
        cur[occurring[k]] = 0;
    };
    rec(0, max_summands);
    std::sort(out.begin(), out.end(), [](const Mult& a, const Mult& b) {
        int ta = total(a), tb = total(b);
        if (ta != tb) return ta < tb;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    std::lock_guard<std::recursive_mutex> lk(cache_->mu);
    cache_->objects[max_summands] = out;
    return out;
}

std::vector<Mult> CategoryInstance::a_objects(int max_summands) const {
    std::vector<Mult> out;
    for (const auto& m : objects(max_summands))
        if (in_A(m)) out.push_back(m);
    return out;
}

std::mt19937_64 CategoryInstance::rng_for(const std::string& tag) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return std::mt19937_64(h ^ (seed * 0x9E3779B97F4A7C15ULL));
}

Morphisms CategoryInstance::sample(const Mult& a, const Mult& b, int extra) const {
    auto basis = hom(a, b);
    RepPtr x = canon(a), y = canon(b);
    Morphisms out;
    out.maps.push_back(zero_morphism(q, x, y));
    int d = static_cast<int>(basis.size());
    if (d == 0) {
        out.regime = "exhaustive";
        return out;
    }
    if (d <= 2) {
        out.regime = "exhaustive up to scalar";
        Vec c(d, 0);
        for (int lead = 0; lead < d; ++lead) {
            // vectors whose first nonzero coordinate is `lead` and equals 1
            int rest = d - lead - 1;
            long long count = 1;
            for (int k = 0; k < rest; ++k) count *= p();
            for (long long idx = 0; idx < count; ++idx) {
                std::fill(c.begin(), c.end(), 0);
                c[lead] = 1;
                long long t = idx;
                for (int k = lead + 1; k < d; ++k) {
                    c[k] = static_cast<int>(t % p());
                    t /= p();
                }
                out.maps.push_back(linear_combination(q, x, y, basis, c));
            }
        }
        return out;
    }
    out.regime = "basis+" + std::to_string(extra) + " seeded";
    for (const auto& f : basis) out.maps.push_back(f);
    auto rng = rng_for("sample:" + mult_name(a) + "->" + mult_name(b));
    for (int t = 0; t < extra; ++t) {
        Vec c(d);
        for (auto& v : c) v = static_cast<int>(rng() % p());
        out.maps.push_back(linear_combination(q, x, y, basis, c));
    }
    return out;
}

ConflationVerdict CategoryInstance::is_conflation(const RepMorphism& i, const RepMorphism& p) const {
    ConflationVerdict v;
    if (i.target->dims != p.source->dims) throw InputError("is_conflation: maps are not composable");
    Mult mx, my, mz;
    try {
        mx = mult_of(i.source);
        my = mult_of(i.target);
        mz = mult_of(p.target);
    } catch (const InputError& e) {
        throw InputError(std::string("is_conflation: object outside C: ") + e.what());
    }
    for (const auto* m : {&mx, &my, &mz})
        if (!admits(*m)) throw InputError("is_conflation: object " + mult_name(*m) + " is outside C");
    if (!is_zero(compose(p, i))) {
        v.reason = "composite is nonzero";
        return v;
    }
    if (strategy == Strategy::AllKernelCokernel) {
        if (!is_kernel_in_C(i, p)) {
            v.reason = "first map is not a kernel in C";
            return v;
        }
        if (!is_cokernel_in_C(i, p)) {
            v.reason = "second map is not a cokernel in C";
            return v;
        }
        v.ok = true;
        v.evidence.push_back("kernel and cokernel universal properties against all indecomposables of C");
        return v;
    }
    if (!is_injective(i) || !is_surjective(p)) {
        v.reason = "not exact in the ambient representation category";
        return v;
    }
    for (int w = 0; w < q.nv(); ++w)
        if (i.source->dims[w] + p.target->dims[w] != i.target->dims[w]) {
            v.reason = "not exact in the middle";
            return v;
        }
    v.evidence.push_back("ambient short exact sequence " + mult_name(mx) + " -> " + mult_name(my) + " -> " +
                         mult_name(mz));
    if (strategy == Strategy::GeneratedBy) {
        for (int w : rel_projective) {
            int dy = hom_dim(unit(w), my), dx = hom_dim(unit(w), mx), dz = hom_dim(unit(w), mz);
            if (dy != dx + dz) {
                v.reason = "Hom(" + reg.items[w].name + ",-) is not exact on it (" + std::to_string(dx) + "+" +
                           std::to_string(dz) + "!=" + std::to_string(dy) + ")";
                v.evidence.clear();
                return v;
            }
        }
        std::string rp;
        for (int w : rel_projective) rp += (rp.empty() ? "" : ",") + reg.items[w].name;
        v.evidence.push_back("Hom(W,-) exact for every relative projective W in {" + rp + "}");
    }
    v.ok = true;
    return v;
}

std::optional<Conflation> CategoryInstance::deflation_conflation(const RepMorphism& p) const {
    if (strategy != Strategy::AllKernelCokernel && !is_surjective(p)) return std::nullopt;
    if (!in_C(p.source) || !in_C(p.target)) return std::nullopt;
    auto k = kernel(p);
    if (!k) return std::nullopt;
    if (!is_conflation(k->map, p).ok) return std::nullopt;
    Decomposition cy = canonicalize(p.source), cz = canonicalize(p.target);
    return Conflation{mult_of(k->object), cy.mult, cz.mult, compose(cy.to_sum, k->map),
                      compose(cz.to_sum, compose(p, cy.from_sum))};
}

std::optional<Conflation> CategoryInstance::inflation_conflation(const RepMorphism& i) const {
    if (strategy != Strategy::AllKernelCokernel && !is_injective(i)) return std::nullopt;
    if (!in_C(i.source) || !in_C(i.target)) return std::nullopt;
    auto c = cokernel(i);
    if (!c) return std::nullopt;
    if (!is_conflation(i, c->map).ok) return std::nullopt;
    Decomposition cx = canonicalize(i.source), cy = canonicalize(i.target);
    return Conflation{cx.mult, cy.mult, mult_of(c->object), compose(cy.to_sum, compose(i, cx.from_sum)),
                      compose(c->map, cy.from_sum)};
}

bool CategoryInstance::is_deflation(const RepMorphism& p) const { return deflation_conflation(p).has_value(); }
bool CategoryInstance::is_inflation(const RepMorphism& i) const { return inflation_conflation(i).has_value(); }

std::optional<SubObject> CategoryInstance::kernel(const RepMorphism& f) const {
    SubObject k = kernel_morphism(q, f);
    try {
        Decomposition d = canonicalize(k.object);
        if (!admits(d.mult)) return std::nullopt;
        return SubObject{d.from_sum.source, compose(k.map, d.from_sum)};
    } catch (const InputError&) {
        return std::nullopt;
    }
}

std::optional<SubObject> CategoryInstance::cokernel(const RepMorphism& f) const {
    SubObject c = cokernel_morphism(q, f);
    try {
        Decomposition d = canonicalize(c.object);
        if (!admits(d.mult)) return std::nullopt;
        return SubObject{d.to_sum.target, compose(d.to_sum, c.map)};
    } catch (const InputError&) {
        return std::nullopt;
    }
}

std::optional<Square> CategoryInstance::pullback(const RepMorphism& f, const RepMorphism& g) const {
    Square s = perc::pullback(q, f, g);
    try {
        Decomposition d = canonicalize(s.corner);
        if (!admits(d.mult)) return std::nullopt;
        return Square{d.from_sum.source, compose(s.first, d.from_sum), compose(s.second, d.from_sum)};
    } catch (const InputError&) {
        return std::nullopt;
    }
}

std::optional<Square> CategoryInstance::pushout(const RepMorphism& f, const RepMorphism& g) const {
    Square s = perc::pushout(q, f, g);
    try {
        Decomposition d = canonicalize(s.corner);
        if (!admits(d.mult)) return std::nullopt;
        return Square{d.to_sum.target, compose(d.to_sum, s.first), compose(d.to_sum, s.second)};
    } catch (const InputError&) {
        return std::nullopt;
    }
}

std::optional<ImageFactorization> CategoryInstance::image(const RepMorphism& f) const {
    ImageFactorization im = image_factorization(q, f);
    try {
        Decomposition d = canonicalize(im.image);
        if (!admits(d.mult)) return std::nullopt;
        return ImageFactorization{d.to_sum.target, compose(d.to_sum, im.epi), compose(im.mono, d.from_sum)};
    } catch (const InputError&) {
        return std::nullopt;
    }
}

std::optional<ImageFactorization> CategoryInstance::admissible_factorization(const RepMorphism& f) const {
    auto im = image(f);
    if (!im) return std::nullopt;
    if (!is_deflation(im->epi) || !is_inflation(im->mono)) return std::nullopt;
    return im;
}

bool CategoryInstance::is_kernel_in_C(const RepMorphism& k, const RepMorphism& f) const {
    if (!is_zero(compose(f, k))) return false;
    for (int w : occurring) {
        RepPtr W = canon(unit(w));
        auto bk = hom(W, k.source), by = hom(W, k.target);
        std::vector<Vec> img, fy;
        for (const auto& b : bk) img.push_back(flatten(compose(k, b)));
        for (const auto& b : by) fy.push_back(flatten(compose(f, b)));
        int r = span_rank(p(), img);
        if (r != static_cast<int>(bk.size())) return false;
        if (r != static_cast<int>(by.size()) - span_rank(p(), fy)) return false;
    }
    return true;
}

bool CategoryInstance::is_cokernel_in_C(const RepMorphism& f, const RepMorphism& c) const {
    if (!is_zero(compose(c, f))) return false;
    for (int w : occurring) {
        RepPtr W = canon(unit(w));
        auto bc = hom(c.target, W), by = hom(c.source, W);
        std::vector<Vec> img, fy;
        for (const auto& b : bc) img.push_back(flatten(compose(b, c)));
        for (const auto& b : by) fy.push_back(flatten(compose(b, f)));
        int r = span_rank(p(), img);
        if (r != static_cast<int>(bc.size())) return false;
        if (r != static_cast<int>(by.size()) - span_rank(p(), fy)) return false;
    }
    return true;
}

bool CategoryInstance::is_pullback_in_C(const RepMorphism& a, const RepMorphism& b, const RepMorphism& f,
                                        const RepMorphism& g) const {
    if (!equal(compose(f, a), compose(g, b))) return false;
    for (int w : occurring) {
        RepPtr W = canon(unit(w));
        auto bp = hom(W, a.source), bx = hom(W, f.source), byy = hom(W, g.source);
        std::vector<Vec> img, comp;
        for (const auto& u : bp) img.push_back(concat(flatten(compose(a, u)), flatten(compose(b, u))));
        for (const auto& u : bx) comp.push_back(flatten(compose(f, u)));
        for (const auto& u : byy) comp.push_back(flatten(compose(g, u)));
        int r = span_rank(p(), img);
        if (r != static_cast<int>(bp.size())) return false;
        int compatible = static_cast<int>(bx.size() + byy.size()) - span_rank(p(), comp);
        if (r != compatible) return false;
    }
    return true;
}

bool CategoryInstance::is_pushout_in_C(const RepMorphism& f, const RepMorphism& g, const RepMorphism& a,
                                       const RepMorphism& b) const {
    if (!equal(compose(a, f), compose(b, g))) return false;
    for (int w : occurring) {
        RepPtr W = canon(unit(w));
        auto bp = hom(a.target, W), bx = hom(f.target, W), byy = hom(g.target, W);
        std::vector<Vec> img, comp;
        for (const auto& u : bp) img.push_back(concat(flatten(compose(u, a)), flatten(compose(u, b))));
        for (const auto& u : bx) comp.push_back(flatten(compose(u, f)));
        for (const auto& u : byy) comp.push_back(flatten(compose(u, g)));
        int r = span_rank(p(), img);
        if (r != static_cast<int>(bp.size())) return false;
        int compatible = static_cast<int>(bx.size() + byy.size()) - span_rank(p(), comp);
        if (r != compatible) return false;
    }
    return true;
}

void CategoryInstance::build_conflations() const {
    std::vector<Conflation> out;
    auto objs = quant_objects();
    for (const auto& y : objs)
        for (const auto& z : objs) {
            if (!dims_leq(dims_of(z), dims_of(y))) continue;
            for (const auto& p : sample(y, z).maps)
                if (auto c = deflation_conflation(p)) out.push_back(std::move(*c));
        }
    std::lock_guard<std::recursive_mutex> lk(cache_->mu);
    cache_->conflations = std::move(out);
}

const std::vector<Conflation>& CategoryInstance::conflations() const {
    {
        std::lock_guard<std::recursive_mutex> lk(cache_->mu);
        if (cache_->conflations) return *cache_->conflations;
    }
    build_conflations();
    return *cache_->conflations;
}

const std::vector<Conflation>& CategoryInstance::split_conflations() const {
    {
        std::lock_guard<std::recursive_mutex> lk(cache_->mu);
        if (cache_->split) return *cache_->split;
    }
    std::vector<Conflation> out;
    auto objs = quant_objects();
    for (const auto& x : objs)
        for (const auto& z : objs) {
            Mult y = mult_add(x, z);
            if (total(y) > quant_bound || !admits(y)) continue;
            DirectSum s = direct_sum(q, {canon(x), canon(z)});
            Decomposition d = canonicalize(s.object);
            out.push_back({x, d.mult, z, compose(d.to_sum, s.inclusions[0]), compose(s.projections[1], d.from_sum)});
        }
    std::lock_guard<std::recursive_mutex> lk(cache_->mu);
    cache_->split = std::move(out);
    return *cache_->split;
}

RepMorphism CategoryInstance::transport(const RepMorphism& f) const {
    Decomposition a = canonicalize(f.source), b = canonicalize(f.target);
    return compose(b.to_sum, compose(f, a.from_sum));
}

std::string CategoryInstance::mult_name(const Mult& m) const {
    std::string s;
    for (int i = 0; i < n(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "+";
        if (m[i] > 1) s += std::to_string(m[i]) + "*";
        s += reg.items[i].name;
    }
    return s.empty() ? "0" : s;
}

Mult CategoryInstance::parse_mult(const std::string& text) const {
    Mult m = zero_mult();
    std::string t;
    for (char c : text)
        if (c != ' ') t += c;
    if (t.empty() || t == "0") return m;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, '+')) {
        int c = 1;
        auto star = part.find('*');
        if (star != std::string::npos) {
            try {
                c = std::stoi(part.substr(0, star));
            } catch (const std::exception&) {
                throw InputError("bad multiplicity in '" + part + "'");
            }
            part = part.substr(star + 1);
        }
        m[reg.index(part)] += c;
    }
    return m;
}

Mult CategoryInstance::dims_of(const Mult& m) const {
    Mult d(q.nv(), 0);
    for (int i = 0; i < n(); ++i)
        for (int v = 0; v < q.nv(); ++v) d[v] += m[i] * reg.items[i].rep->dims[v];
    return d;
}

void CategoryInstance::finalize() {
    q.validate();
    std::mt19937_64 rng(seed);
    for (const auto& it : reg.items) {
        validate_rep(q, *it.rep);
        if (!local_endomorphism_test(q, it.rep, rng).local)
            throw InputError("indecomposable '" + it.name + "' does not have a local endomorphism ring", 14);
    }
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (reg.items[i].name == reg.items[j].name)
                throw InputError("duplicate indecomposable name '" + reg.items[i].name + "'", 3);
    if (static_cast<int>(a_mask.size()) != n()) a_mask.resize(n(), false);

    occurring.clear();
    for (int j = 0; j < n(); ++j) {
        bool found = false;
        Mult cur = zero_mult();
        std::function<void(int, int)> rec = [&](int k, int left) {
            if (found) return;
            if (k == n()) {
                if (cur[j] > 0 && admits(cur)) found = true;
                return;
            }
            int lo = k == j ? 1 : 0;
            for (int c = lo; c <= left; ++c) {
                cur[k] = c;
                rec(k + 1, left - c);
            }
            cur[k] = 0;
        };
        rec(0, 3);
        if (found) occurring.push_back(j);
    }
    for (int a : a_indecs())
        if (!admits(unit(a)))
            throw InputError("subcategory member '" + reg.items[a].name + "' is not an object of C", 17);
    auto small = objects(3);
    for (const auto& x : small)
        for (const auto& y : small)
            if (total(x) + total(y) <= 3 && !admits(mult_add(x, y)))
                throw InputError("object predicate is not closed under direct sums: " + mult_name(x) + " + " +
                                     mult_name(y),
                                 15);
    for (const auto& g : generators) {
        if (!is_intertwiner(q, g.inflation) || !is_intertwiner(q, g.deflation))
            throw InputError("generator '" + g.name + "' maps are not representation morphisms", 16);
        SubObject k = kernel_morphism(q, g.deflation);
        bool exact = is_injective(g.inflation) && is_surjective(g.deflation) &&
                     is_zero(compose(g.deflation, g.inflation)) &&
                     k.object->total_dim() == g.inflation.source->total_dim();
        if (!exact) throw InputError("generator '" + g.name + "' is not a kernel-cokernel pair", 16);
    }
    rel_projective.clear();
    if (strategy == Strategy::GeneratedBy) {
        for (int w = 0; w < n(); ++w) {
            bool ok = true;
            for (const auto& g : generators)
                if (hom_dim(unit(w), g.y) != hom_dim(unit(w), g.x) + hom_dim(unit(w), g.z)) ok = false;
            if (ok) rel_projective.push_back(w);
        }
    }
}

}  // namespace perc
