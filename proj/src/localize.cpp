#include "perc/localize.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace perc {

namespace {

constexpr size_t kMaxSources = 300;
constexpr int kStepsPerMiddle = 2;

Vec tagged(Vec a, const Vec& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

int rank_of(const FieldMatrix& m) { return m.rows() == 0 || m.cols() == 0 ? 0 : rank(m); }

FieldMatrix matrix_of(int p, int rows, const std::vector<Vec>& cols) {
    if (cols.empty()) return FieldMatrix(p, rows, 0);
    return FieldMatrix::from_columns(p, rows, cols);
}

// Objects of C detecting the occurring indecs: the indec itself, else the smallest object containing it.
std::vector<Mult> test_objects(const CategoryInstance& c) {
    std::vector<Mult> out;
    for (int w : c.occurring) {
        Mult u = c.unit(w);
        if (c.admits(u)) {
            out.push_back(u);
            continue;
        }
        for (const auto& m : c.objects(c.size_bound))
            if (m[w] > 0) {
                out.push_back(m);
                break;
            }
    }
    return out;
}

// Moves the target of a chain along an isomorphism.
WeakIsoChain retarget(WeakIsoChain s, const RepMorphism& iso) {
    if (s.steps.empty()) {
        s.composite = compose(iso, s.composite);
    } else {
        s.steps.back().map = compose(iso, s.steps.back().map);
        s.composite = compose(iso, s.composite);
    }
    s.target = iso.target;
    return s;
}

}  // namespace

WeakIsoChain identity_chain(const Quiver& q, const RepPtr& x) {
    return WeakIsoChain{x, x, {}, identity_morphism(q, x)};
}

WeakIsoChain single_step(const WeakIsoStep& s) {
    return WeakIsoChain{s.map.source, s.map.target, {s}, s.map};
}

WeakIsoChain chain_then(const WeakIsoChain& first, const WeakIsoChain& second) {
    WeakIsoChain out;
    out.source = first.source;
    out.target = second.target;
    out.steps = first.steps;
    out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
    out.composite = compose(second.composite, first.composite);
    return out;
}

Roof identity_roof(const CategoryInstance& c, const RepMorphism& f) {
    return Roof{identity_chain(c.q, f.source), f};
}

struct Localizer::Cache {
    std::recursive_mutex mu;
    std::optional<bool> percolating, admissible;
    std::map<Mult, std::vector<WeakIsoStep>> steps;
    std::map<std::pair<Mult, int>, std::vector<WeakSource>> sources;
    std::map<std::pair<Mult, Mult>, std::vector<RepMorphism>> zero;
    std::map<Mult, std::vector<Mult>> by_dims;
    bool by_dims_ready = false;
};

Localizer::Localizer(const CategoryInstance& c, int depth)
    : Localizer(c, c.a_mask, depth) {}

Localizer::Localizer(const CategoryInstance& c, std::vector<bool> mask, int depth)
    : c_(c), mask_(std::move(mask)), depth_(depth < 0 ? c.depth : depth), cache_(std::make_shared<Cache>()) {}

bool Localizer::percolating() const {
    std::lock_guard<std::recursive_mutex> lk(cache_->mu);
    if (!cache_->percolating) {
        bool ok = true;
        for (const char* id : {"P1", "P2", "P3", "P4"}) ok = ok && check_sub_axiom(c_, mask_, id).holds;
        cache_->percolating = ok;
    }
    return *cache_->percolating;
}

bool Localizer::admissible() const {
    std::lock_guard<std::recursive_mutex> lk(cache_->mu);
    if (!cache_->admissible) {
        bool ok = true;
        for (const char* id : {"A1", "A2", "A3"}) ok = ok && check_sub_axiom(c_, mask_, id).holds;
        cache_->admissible = ok;
    }
    return *cache_->admissible;
}

std::optional<WeakIsoStep> Localizer::weak_iso_step(const RepMorphism& f) const {
    if (auto k = c_.deflation_conflation(f))
        if (in_sub(c_, mask_, k->x)) return WeakIsoStep{false, f};
    if (auto k = c_.inflation_conflation(f))
        if (in_sub(c_, mask_, k->z)) return WeakIsoStep{true, f};
    return std::nullopt;
}

bool Localizer::verify_chain(const WeakIsoChain& s) const {
    RepMorphism acc = identity_morphism(c_.q, s.source);
    for (const auto& st : s.steps) {
        auto w = weak_iso_step(st.map);
        if (!w) return false;
        if (st.map.source->dims != acc.target->dims) return false;
        acc = compose(st.map, acc);
    }
    if (s.steps.empty()) return is_iso(s.composite);
    return equal(acc, s.composite);
}

bool Localizer::is_admissible_weak_iso(const RepMorphism& f) const {
    auto im = c_.image(f);
    if (!im) return false;
    auto d = c_.deflation_conflation(im->epi);
    if (!d || !in_sub(c_, mask_, d->x)) return false;
    auto i = c_.inflation_conflation(im->mono);
    return i && in_sub(c_, mask_, i->z);
}

const std::vector<WeakIsoStep>& Localizer::one_steps(const Mult& y) const {
    std::lock_guard<std::recursive_mutex> lk(cache_->mu);
    auto it = cache_->steps.find(y);
    if (it != cache_->steps.end()) return it->second;
    if (!cache_->by_dims_ready) {
        for (const auto& m : c_.objects(c_.size_bound)) cache_->by_dims[c_.dims_of(m)].push_back(m);
        cache_->by_dims_ready = true;
    }
    std::vector<WeakIsoStep> out;
    Mult dy = c_.dims_of(y);
    std::vector<Mult> aobjs;
    for (const auto& a : c_.objects(c_.size_bound))
        if (total(a) > 0 && in_sub(c_, mask_, a)) aobjs.push_back(a);
    bool need_surj = c_.strategy != Strategy::AllKernelCokernel;
    std::set<Mult> tried;
    for (const auto& a : aobjs) {
        Mult da = c_.dims_of(a);
        // deflations M ->> y with kernel in A
        Mult up = dy;
        for (size_t v = 0; v < up.size(); ++v) up[v] += da[v];
        auto bi = cache_->by_dims.find(up);
        if (bi != cache_->by_dims.end())
            for (const auto& m : bi->second) {
                if (!tried.insert(tagged(m, {0})).second) continue;
                int found = 0;
                for (const auto& f : c_.sample(m, y, 16).maps) {
                    if (need_surj && !is_surjective(f)) continue;
                    auto k = c_.deflation_conflation(f);
                    if (k && in_sub(c_, mask_, k->x)) {
                        out.push_back({false, f});
                        if (++found >= kStepsPerMiddle) break;
                    }
                }
            }
        // inflations M >-> y with cokernel in A
        Mult down = dy;
        bool ok = true;
        for (size_t v = 0; v < down.size(); ++v) {
            down[v] -= da[v];
            if (down[v] < 0) ok = false;
        }
        if (!ok) continue;
        auto bj = cache_->by_dims.find(down);
        if (bj == cache_->by_dims.end()) continue;
        for (const auto& m : bj->second) {
            if (!tried.insert(tagged(m, {1})).second) continue;
            int found = 0;
            for (const auto& f : c_.sample(m, y, 16).maps) {
                if (need_surj && !is_injective(f)) continue;
                auto k = c_.inflation_conflation(f);
                if (k && in_sub(c_, mask_, k->z)) {
                    out.push_back({true, f});
                    if (++found >= kStepsPerMiddle) break;
                }
            }
        }
    }
    return cache_->steps.emplace(y, std::move(out)).first->second;
}

const std::vector<WeakSource>& Localizer::sources(const Mult& x, int depth) const {
    std::lock_guard<std::recursive_mutex> lk(cache_->mu);
    auto key = std::make_pair(x, depth);
    auto it = cache_->sources.find(key);
    if (it != cache_->sources.end()) return it->second;
    std::vector<WeakSource> out;
    std::set<Mult> seen;
    out.push_back({x, identity_chain(c_.q, c_.canon(x)), 0});
    seen.insert(x);
    size_t lo = 0;
    for (int level = 1; level <= depth; ++level) {
        size_t hi = out.size();
        for (size_t k = lo; k < hi && out.size() < kMaxSources; ++k) {
            Mult y = out[k].source;
            for (const auto& st : one_steps(y)) {
                Mult m = c_.mult_of(st.map.source);
                if (!seen.insert(m).second) continue;
                out.push_back({m, chain_then(single_step(st), out[k].chain), level});
                if (out.size() >= kMaxSources) break;
            }
        }
        lo = hi;
    }
    return cache_->sources.emplace(key, std::move(out)).first->second;
}

const std::vector<RepMorphism>& Localizer::zero_space(const Mult& xp, const Mult& y) const {
    std::lock_guard<std::recursive_mutex> lk(cache_->mu);
    auto key = std::make_pair(xp, y);
    auto it = cache_->zero.find(key);
    if (it != cache_->zero.end()) return it->second;
    RepPtr X = c_.canon(xp), Y = c_.canon(y);
    std::vector<RepMorphism> out;
    if (percolating()) {
        out = ideal_span(c_, X, Y, mask_);
    } else {
        auto basis = c_.hom(X, Y);
        if (!basis.empty()) {
            std::vector<RepMorphism> us;
            for (const auto& st : one_steps(xp)) us.push_back(st.map);
            for (const auto& s : sources(xp, depth_))
                if (s.depth > 0) us.push_back(s.chain.composite);
            std::vector<Vec> vecs;
            for (const auto& u : us) {
                std::vector<Vec> cols;
                for (const auto& b : basis) cols.push_back(flatten(compose(b, u)));
                if (cols.front().empty()) {
                    for (size_t a = 0; a < basis.size(); ++a) {
                        Vec e(basis.size(), 0);
                        e[a] = 1;
                        vecs.push_back(e);
                    }
                    continue;
                }
                for (auto& v : kernel_basis(matrix_of(c_.p(), static_cast<int>(cols.front().size()), cols)))
                    vecs.push_back(v);
            }
            if (!vecs.empty()) {
                auto e = rref(matrix_of(c_.p(), static_cast<int>(basis.size()), vecs));
                for (int pv : e.pivots) out.push_back(linear_combination(c_.q, X, Y, basis, vecs[pv]));
            }
        }
    }
    return cache_->zero.emplace(key, std::move(out)).first->second;
}

ZeroVerdict Localizer::is_zero_in_quotient(const RepMorphism& f) const {
    ZeroVerdict v;
    Decomposition dx = c_.canonicalize(f.source), dy = c_.canonicalize(f.target);
    RepMorphism g = compose(dy.to_sum, compose(f, dx.from_sum));
    bool perc = percolating();
    v.method = perc ? "factors through A" : "annihilated by a bounded weak isomorphism";
    if (is_zero(g)) {
        v.zero = true;
        return v;
    }
    const auto& z = zero_space(dx.mult, dy.mult);
    if (!z.empty()) {
        std::vector<Vec> cols;
        for (const auto& m : z) cols.push_back(flatten(m));
        Vec t = flatten(g);
        v.zero = solve_linear(matrix_of(c_.p(), static_cast<int>(t.size()), cols), t).has_value();
    }
    v.exact = perc || v.zero;
    return v;
}

ZeroVerdict Localizer::is_zero_in_quotient(const Roof& r) const { return is_zero_in_quotient(r.f); }

std::optional<std::pair<WeakIsoChain, RepMorphism>> Localizer::ore(const WeakIsoChain& s, const RepMorphism& g,
                                                                  int max_len) const {
    if (max_len < 0) max_len = depth_;
    if (s.steps.empty()) {
        auto h = solve_pre(c_, s.composite, g);
        if (!h) return std::nullopt;
        return std::make_pair(identity_chain(c_.q, g.source), *h);
    }
    if (auto pb = c_.pullback(s.composite, g)) {
        if (auto st = weak_iso_step(pb->second)) {
            if (max_len >= 1) return std::make_pair(single_step(*st), pb->first);
        } else if (is_iso(pb->second) && max_len >= 0) {
            auto inv = inverse_morphism(pb->second);
            WeakIsoChain t = identity_chain(c_.q, g.source);
            return std::make_pair(t, compose(pb->first, *inv));
        }
    }
    Decomposition dw = c_.canonicalize(g.source);
    for (const auto& src : sources(dw.mult, max_len)) {
        RepMorphism tw = compose(dw.from_sum, src.chain.composite);
        auto h = solve_pre(c_, s.composite, compose(g, tw));
        if (h) return std::make_pair(retarget(src.chain, dw.from_sum), *h);
    }
    return std::nullopt;
}

LocHom Localizer::hom(const Mult& x, const Mult& y, int depth) const {
    if (depth < 0) depth = depth_;
    LocHom out;
    out.x = x;
    out.y = y;
    out.depth = depth;
    out.method = percolating() ? "quotient by maps through A" : "quotient by maps killed by weak isomorphisms";
    out.dims_by_depth.assign(depth + 1, 0);
    const auto& srcs = sources(x, depth);
    int best = -1;
    size_t best_k = 0;
    for (size_t k = 0; k < srcs.size(); ++k) {
        int d = c_.hom_dim(srcs[k].source, y) - static_cast<int>(zero_space(srcs[k].source, y).size());
        for (int e = srcs[k].depth; e <= depth; ++e) out.dims_by_depth[e] = std::max(out.dims_by_depth[e], d);
        if (d > best) {
            best = d;
            best_k = k;
        }
    }
    out.dim = std::max(best, 0);
    out.stabilized = depth > 0 && out.dims_by_depth[depth] == out.dims_by_depth[depth - 1];
    const auto& st = srcs[best_k];
    out.stage = st.source;
    out.stage_chain = st.chain;
    out.zero = zero_space(st.source, y);
    auto hb = c_.hom(st.source, y);
    std::vector<Vec> cols;
    for (const auto& z : out.zero) cols.push_back(flatten(z));
    for (const auto& b : hb) cols.push_back(flatten(b));
    if (!cols.empty() && !cols.front().empty()) {
        auto e = rref(FieldMatrix::from_columns(c_.p(), static_cast<int>(cols.front().size()), cols));
        for (int pv : e.pivots)
            if (pv >= static_cast<int>(out.zero.size())) out.basis.push_back(hb[pv - out.zero.size()]);
    }
    return out;
}

std::optional<Vec> Localizer::coordinates(const LocHom& h, const Roof& r) const {
    RepPtr X = c_.canon(h.x), Y = c_.canon(h.y);
    WeakIsoChain s = r.s;
    if (s.target != X) s = retarget(s, c_.canonicalize(s.target).to_sum);
    RepMorphism f = compose(c_.canonicalize(r.f.target).to_sum, r.f);
    if (h.dim == 0) return Vec{};
    auto o = ore(s, h.stage_chain.composite);
    if (!o) return std::nullopt;
    const auto& [t, hh] = *o;  // t: W -> stage, hh: W -> X'
    RepMorphism rhs = compose(f, hh);
    Decomposition dw = c_.canonicalize(t.source);
    Mult w = dw.mult;
    const auto& zw = zero_space(w, h.y);
    std::vector<Vec> cols;
    for (const auto& b : h.basis) cols.push_back(flatten(compose(compose(b, t.composite), dw.from_sum)));
    for (const auto& z : h.zero) cols.push_back(flatten(compose(compose(z, t.composite), dw.from_sum)));
    for (const auto& z : zw) cols.push_back(flatten(z));
    Vec target = flatten(compose(rhs, dw.from_sum));
    if (target.empty()) return Vec(h.basis.size(), 0);
    auto sol = solve_linear(matrix_of(c_.p(), static_cast<int>(target.size()), cols), target);
    if (!sol) return std::nullopt;
    return Vec(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(h.basis.size()));
}

std::optional<Vec> Localizer::coordinates(const LocHom& h, const RepMorphism& f) const {
    return coordinates(h, identity_roof(c_, f));
}

std::optional<FieldMatrix> Localizer::post_matrix(const RepMorphism& k, const LocHom& from, const LocHom& to) const {
    RepMorphism kk = c_.transport(k);
    std::vector<Vec> cols;
    for (const auto& b : from.basis) {
        auto v = coordinates(to, Roof{from.stage_chain, compose(kk, b)});
        if (!v) return std::nullopt;
        cols.push_back(*v);
    }
    return matrix_of(c_.p(), to.dim, cols);
}

std::optional<FieldMatrix> Localizer::pre_matrix(const RepMorphism& k, const LocHom& from, const LocHom& to) const {
    RepMorphism kk = c_.transport(k);
    std::vector<Vec> cols;
    if (from.dim == 0) return matrix_of(c_.p(), to.dim, cols);
    auto o = ore(from.stage_chain, kk);
    if (!o) return std::nullopt;
    const auto& [t, h] = *o;
    for (const auto& b : from.basis) {
        auto v = coordinates(to, Roof{t, compose(b, h)});
        if (!v) return std::nullopt;
        cols.push_back(*v);
    }
    return matrix_of(c_.p(), to.dim, cols);
}

RoofCompare Localizer::roof_equal(const Roof& a, const Roof& b) const {
    RoofCompare out;
    auto o = ore(a.s, b.s.composite);
    if (!o) {
        out.determinate = false;
        out.method = "no common denominator within depth";
        return out;
    }
    const auto& [t, h] = *o;  // a.s∘h = b.s∘t
    RepMorphism d = sub(compose(a.f, h), compose(b.f, t.composite));
    auto z = is_zero_in_quotient(d);
    out.equal = z.zero;
    out.determinate = z.exact;
    out.method = "common denominator, then " + z.method;
    return out;
}

QuotientDeflation Localizer::quotient_deflation(const RepMorphism& p0) const {
    QuotientDeflation out;
    RepMorphism p = c_.transport(p0);
    if (c_.is_deflation(p)) {
        out.found = true;
        out.certificate = "deflation in C";
        return out;
    }
    Mult y = c_.mult_of(p.source), z = c_.mult_of(p.target);
    int d1 = std::min(depth_, 2);
    auto rng = c_.rng_for("qdefl:" + c_.mult_name(y) + "->" + c_.mult_name(z));
    for (const auto& sy : sources(y, d1))
        for (const auto& sz : sources(z, d1)) {
            if (sy.depth == 0 && sz.depth == 0) continue;
            // p̃ with sz∘p̃ ≡ p∘sy mod maps vanishing in the quotient
            RepPtr Yt = c_.canon(sy.source), Zt = c_.canon(sz.source);
            auto basis = c_.hom(Yt, Zt);
            const auto& zr = zero_space(sy.source, z);
            RepMorphism rhs = compose(p, sy.chain.composite);
            Vec target = flatten(rhs);
            if (target.empty()) continue;
            std::vector<Vec> cols;
            for (const auto& b : basis) cols.push_back(flatten(compose(sz.chain.composite, b)));
            for (const auto& m : zr) cols.push_back(flatten(m));
            FieldMatrix a = matrix_of(c_.p(), static_cast<int>(target.size()), cols);
            auto sol = solve_linear(a, target);
            if (!sol) continue;
            auto kern = kernel_basis(a);
            for (int attempt = 0; attempt < 9; ++attempt) {
                Vec x = *sol;
                if (attempt > 0)
                    for (const auto& kv : kern) {
                        int coef = static_cast<int>(rng() % c_.p());
                        for (size_t j = 0; j < x.size(); ++j) x[j] = modp(x[j] + coef * kv[j], c_.p());
                    }
                Vec px(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(basis.size()));
                RepMorphism pt = linear_combination(c_.q, Yt, Zt, basis, px);
                if (c_.is_deflation(pt)) {
                    out.found = true;
                    out.certificate = "deflation " + c_.mult_name(sy.source) + " ->> " + c_.mult_name(sz.source) +
                                      " between weak-isomorphism sources";
                    return out;
                }
                if (kern.empty()) break;
            }
        }
    return out;
}

bool Localizer::quotient_cokernel(const RepMorphism& i, const RepMorphism& p, json* why) const {
    Mult x = c_.mult_of(i.source), y = c_.mult_of(p.source), z = c_.mult_of(p.target);
    for (const auto& t : test_objects(c_)) {
        LocHom lz = hom(z, t), ly = hom(y, t), lx = hom(x, t);
        auto pm = pre_matrix(p, lz, ly);
        auto im = pre_matrix(i, ly, lx);
        if (!pm || !im) {
            if (why) *why = json{{"target", c_.mult_name(t)}, {"reason", "no common denominator at depth"}};
            return false;
        }
        int rp = rank_of(*pm), ri = rank_of(*im);
        if (rp != lz.dim || rp != ly.dim - ri) {
            if (why)
                *why = json{{"target", c_.mult_name(t)},
                            {"dim_hom_Z_T", lz.dim},
                            {"dim_hom_Y_T", ly.dim},
                            {"dim_maps_vanishing_on_X", ly.dim - ri},
                            {"rank_induced", rp}};
            return false;
        }
    }
    return true;
}

bool Localizer::quotient_kernel(const RepMorphism& i, const RepMorphism& p, json* why) const {
    Mult x = c_.mult_of(i.source), y = c_.mult_of(p.source), z = c_.mult_of(p.target);
    for (const auto& t : test_objects(c_)) {
        LocHom lx = hom(t, x), ly = hom(t, y), lz = hom(t, z);
        auto im = post_matrix(i, lx, ly);
        auto pm = post_matrix(p, ly, lz);
        if (!pm || !im) {
            if (why) *why = json{{"source", c_.mult_name(t)}, {"reason", "no common denominator at depth"}};
            return false;
        }
        int ri = rank_of(*im), rp = rank_of(*pm);
        if (ri != lx.dim || ri != ly.dim - rp) {
            if (why)
                *why = json{{"source", c_.mult_name(t)},
                            {"dim_hom_T_X", lx.dim},
                            {"dim_hom_T_Y", ly.dim},
                            {"dim_maps_killed_by_p", ly.dim - rp},
                            {"rank_induced", ri}};
            return false;
        }
    }
    return true;
}

std::optional<RepMorphism> Localizer::find_quotient_kernel(const RepMorphism& p0) const {
    RepMorphism p = c_.transport(p0);
    if (auto k = c_.kernel(p))
        if (quotient_kernel(k->map, p)) return k->map;
    Mult y = c_.mult_of(p.source);
    for (const auto& kk : c_.quant_objects()) {
        if (total(kk) == 0) continue;
        for (const auto& f : c_.sample(kk, y, 8).maps) {
            if (is_zero(f)) continue;
            if (!is_zero_in_quotient(compose(p, f)).zero) continue;
            if (quotient_kernel(f, p)) return f;
        }
    }
    return std::nullopt;
}

LiftResult Localizer::lift_conflation(const Conflation& k, const WeakIsoChain& s0) const {
    const CategoryInstance& c = c_;
    RepPtr Y = k.i.target;
    WeakIsoChain s = s0;
    if (s.target != Y) s = retarget(s, c.canonicalize(s.target).to_sum);
    LiftResult out;
    if (s.steps.empty()) {
        out.lifted = k;
        out.t = identity_chain(c.q, Y);
        out.tx = identity_chain(c.q, k.i.source);
        out.tz = identity_chain(c.q, k.p.target);
        auto inv = inverse_morphism(s.composite);
        if (!inv) throw std::logic_error("lift_conflation: empty chain with non-invertible composite");
        out.v = *inv;
        out.trace.push_back("empty chain");
        return out;
    }
    WeakIsoStep last = s.steps.back();
    WeakIsoChain rest = s;
    rest.steps.pop_back();
    rest.target = last.map.source;
    rest.composite = identity_morphism(c.q, rest.source);
    for (const auto& st : rest.steps) rest.composite = compose(st.map, rest.composite);
    Decomposition dm = c.canonicalize(last.map.source);
    RepMorphism sp = compose(last.map, dm.from_sum);  // canonical Y' -> Y
    rest = retarget(rest, dm.to_sum);

    if (!last.inflation) {
        // Case I: pull back along the A^-1-deflation
        RepMorphism pp = compose(k.p, sp);
        auto kern = c.kernel(pp);
        if (!kern) throw InputError("lift_conflation: kernel of the pulled-back deflation is outside C", 1);
        auto tx = solve_pre(c, k.i, compose(sp, kern->map));
        if (!tx) throw std::logic_error("lift_conflation: no induced map in Case I");
        Conflation k1{c.mult_of(kern->object), c.mult_of(sp.source), k.z, kern->map, pp};
        LiftResult inner = lift_conflation(k1, rest);
        auto stx = weak_iso_step(*tx);
        if (!stx) throw InputError("lift_conflation: induced kernel map is not a weak isomorphism", 1);
        out.lifted = inner.lifted;
        out.t = chain_then(inner.t, single_step({false, sp}));
        out.tx = chain_then(inner.tx, single_step(*stx));
        out.tz = inner.tz;
        out.v = inner.v;
        out.trace = inner.trace;
        out.trace.insert(out.trace.begin(), "case I: pullback along " + object_label(c, sp.source) + " ->> " +
                                                object_label(c, sp.target));
        return out;
    }
    // Case II
    auto co = c.cokernel(sp);
    if (!co) throw InputError("lift_conflation: cokernel of the inflation is outside C", 1);
    RepMorphism g = co->map;
    auto d = p3_diagram(c, k.i, g, mask_);
    if (!d) throw InputError("lift_conflation: no P3 diagram for the composite with the cokernel", 1);
    auto fac = p2_factor(c, d->induced, mask_);
    if (!fac) throw InputError("lift_conflation: no P2 factorization", 1);
    auto zb = c.kernel(fac->deflation);
    if (!zb) throw InputError("lift_conflation: kernel of the P2 deflation is outside C", 1);
    auto pb = c.pullback(d->f_push, zb->map);
    if (!pb) throw InputError("lift_conflation: pullback outside C", 1);
    RepMorphism t = pb->first, pbar = pb->second;
    auto xb = c.kernel(d->f);
    if (!xb) throw InputError("lift_conflation: kernel of X ->> A is outside C", 1);
    auto ibar = solve_pre(c, t, compose(k.i, xb->map));
    if (!ibar) throw std::logic_error("lift_conflation: no induced inflation in Case II");
    auto zmap = solve_post(c, d->f_push, k.p);
    if (!zmap) throw std::logic_error("lift_conflation: no comparison map P -> Z");
    auto st_t = weak_iso_step(t), st_x = weak_iso_step(xb->map), st_z1 = weak_iso_step(zb->map),
         st_z2 = weak_iso_step(*zmap);
    if (!st_t || !st_x || !st_z1 || !st_z2)
        throw InputError("lift_conflation: a comparison map is not a weak isomorphism", 1);
    Conflation lifted{c.mult_of(ibar->source), c.mult_of(t.source), c.mult_of(pbar.target), *ibar, pbar};
    auto u = solve_pre(c, sp, t);
    if (!u) throw std::logic_error("lift_conflation: t does not factor through the inflation");
    WeakIsoChain t_chain = single_step(*st_t);
    WeakIsoChain tx_chain = single_step(*st_x);
    WeakIsoChain tz_chain = chain_then(single_step(*st_z1), single_step(*st_z2));
    std::string note = "case II: P3 pushout onto " + object_label(c, d->i_push.target) + ", P2 through " +
                       c.mult_name(fac->a_prime);
    if (rest.steps.empty()) {
        auto v = solve_pre(c, rest.composite, *u);
        if (!v) throw std::logic_error("lift_conflation: no map into the source");
        out.lifted = lifted;
        out.t = t_chain;
        out.tx = tx_chain;
        out.tz = tz_chain;
        out.v = *v;
        out.trace.push_back(note);
        return out;
    }
    auto o = ore(rest, *u, rest.length());
    if (!o) throw InputError("lift_conflation: no completing square for the remaining chain", 1);
    const auto& [t2, u2] = *o;  // rest∘u2 = u∘t2
    LiftResult inner = lift_conflation(lifted, t2);
    out.lifted = inner.lifted;
    out.t = chain_then(inner.t, t_chain);
    out.tx = chain_then(inner.tx, tx_chain);
    out.tz = chain_then(inner.tz, tz_chain);
    out.v = compose(u2, inner.v);
    out.trace = inner.trace;
    out.trace.insert(out.trace.begin(), note);
    return out;
}

std::vector<WeakSource> enum_weak_iso_sources(const Localizer& L, const Mult& x, int depth) {
    return L.sources(x, depth);
}

std::optional<SubFactorization> factors_through_sub(const CategoryInstance& c, const RepMorphism& f) {
    return factor_through(c, f, c.a_mask);
}

bool verify_lift(const Localizer& L, const Conflation& k, const WeakIsoChain& s, const LiftResult& r,
                 std::string* why) {
    const CategoryInstance& c = L.cat();
    auto bad = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (!c.is_conflation(r.lifted.i, r.lifted.p).ok) return bad("lifted row is not a conflation");
    for (const auto* ch : {&r.t, &r.tx, &r.tz})
        if (!L.verify_chain(*ch)) return bad("a comparison map is not a weak isomorphism chain");
    if (r.t.target->dims != k.i.target->dims || r.tx.target->dims != k.i.source->dims ||
        r.tz.target->dims != k.p.target->dims)
        return bad("comparison maps have wrong targets");
    if (!equal(compose(r.t.composite, r.lifted.i), compose(k.i, r.tx.composite))) return bad("left square");
    if (!equal(compose(k.p, r.t.composite), compose(r.tz.composite, r.lifted.p))) return bad("right square");
    WeakIsoChain ss = s;
    if (!equal(compose(ss.composite, r.v), r.t.composite)) return bad("t does not factor through s");
    return true;
}


namespace {

AxiomReport begin(const CategoryInstance& c, const std::string& id, int depth) {
    AxiomReport r;
    r.id = id;
    r.holds = true;
    r.bound = "p=" + std::to_string(c.p()) + " N=" + std::to_string(c.size_bound) + " depth=" +
              std::to_string(depth) + " quantifier objects<=" + std::to_string(c.quant_bound) + " summands";
    return r;
}

void refute(AxiomReport& r, json w) {
    if (!r.holds) return;
    r.holds = false;
    r.witness = std::move(w);
}

json chain_json(const CategoryInstance& c, const WeakIsoChain& s) {
    json steps = json::array();
    for (const auto& st : s.steps)
        steps.push_back({{"kind", st.inflation ? "inflation" : "deflation"}, {"map", mor_json(c, st.map)}});
    return json{{"source", object_label(c, s.source)}, {"target", object_label(c, s.target)}, {"steps", steps}};
}

std::vector<Mult> nonzero_quant(const CategoryInstance& c) {
    std::vector<Mult> out;
    for (const auto& m : c.quant_objects())
        if (total(m) > 0) out.push_back(m);
    return out;
}

// Nontrivial chains into x, shortest first.
std::vector<const WeakSource*> nontrivial(const Localizer& L, const Mult& x, size_t cap) {
    std::vector<const WeakSource*> out;
    for (const auto& s : L.sources(x))
        if (s.depth > 0 && out.size() < cap) out.push_back(&s);
    return out;
}

}  // namespace

AxiomReport check_rms(const Localizer& L) {
    const CategoryInstance& c = L.cat();
    AxiomReport r = begin(c, "RMS", L.depth());
    bool strong = check_sub_axiom(c, L.mask(), "StronglyFiltering").holds;
    int chains = 0, ore_tasks = 0, ore_short = 0, pullbacks = 0, rms3_tasks = 0;
    bool rms1 = true, rms2 = true, rms3 = true, exact3 = true;
    auto objs = nonzero_quant(c);
    for (const auto& x : objs) {
        for (const auto& s : L.sources(x)) {
            ++chains;
            if (!L.verify_chain(s.chain)) {
                rms1 = false;
                refute(r, json{{"part", "RMS1"}, {"chain", chain_json(c, s.chain)}});
            }
        }
        auto ss = nontrivial(L, x, 4);
        for (const auto& w : objs) {
            auto g = c.sample(w, x, 2).maps;
            for (const auto* s : ss)
                for (const auto& gm : g) {
                    if (is_zero(gm)) continue;
                    ++ore_tasks;
                    auto o = L.ore(s->chain, gm, s->chain.length());
                    if (!o) {
                        rms2 = false;
                        refute(r, json{{"part", "RMS2"}, {"s", chain_json(c, s->chain)}, {"g", mor_json(c, gm)}});
                        continue;
                    }
                    ++ore_short;
                    if (strong && s->chain.length() == 1 && o->first.length() == 1) {
                        ++pullbacks;
                        if (!c.is_pullback_in_C(o->second, o->first.composite, s->chain.composite, gm))
                            refute(r, json{{"part", "RMS2 pullback"}, {"s", chain_json(c, s->chain)},
                                           {"g", mor_json(c, gm)}});
                    }
                }
            // RMS3: s∘f = 0 forces f∘t = 0 for some weak isomorphism t
            for (const auto* s : ss) {
                Mult xp = s->source;
                auto basis = c.hom(c.canon(w), c.canon(xp));
                if (basis.empty()) continue;
                std::vector<Vec> cols;
                for (const auto& b : basis) cols.push_back(flatten(compose(s->chain.composite, b)));
                std::vector<Vec> kern;
                if (cols.front().empty()) {
                    for (size_t a = 0; a < basis.size(); ++a) {
                        Vec e(basis.size(), 0);
                        e[a] = 1;
                        kern.push_back(e);
                    }
                } else {
                    kern = kernel_basis(FieldMatrix::from_columns(c.p(), static_cast<int>(cols.front().size()), cols));
                }
                for (const auto& kv : kern) {
                    RepMorphism f = linear_combination(c.q, c.canon(w), c.canon(xp), basis, kv);
                    ++rms3_tasks;
                    bool found = false;
                    for (const auto& t : L.sources(w))
                        if (is_zero(compose(f, t.chain.composite))) {
                            found = true;
                            break;
                        }
                    if (!found) {
                        rms3 = false;
                        exact3 = false;
                        refute(r, json{{"part", "RMS3"}, {"s", chain_json(c, s->chain)}, {"f", mor_json(c, f)}});
                    }
                }
            }
        }
    }
    r.evidence = json{{"RMS1", rms1}, {"RMS2", rms2}, {"RMS3", rms3},
                      {"completions_within_length", ore_short}, {"strongly_filtering", strong}};
    r.regime = std::to_string(chains) + " chains, " + std::to_string(ore_tasks) + " completion tasks, " +
               std::to_string(rms3_tasks) + " annihilation tasks" +
               (strong ? ", " + std::to_string(pullbacks) + " squares compared with pullbacks" : "");
    if (!exact3) r.notes.push_back("RMS3 failure is relative to the bounded source search");
    return r;
}

std::vector<AxiomReport> check_quotient_axioms(const Localizer& L) {
    const CategoryInstance& c = L.cat();
    std::vector<AxiomReport> out;
    auto small = [&](const Conflation& k) { return total(k.y) <= c.quant_bound && total(k.z) > 0; };

    AxiomReport kc = begin(c, "Q-KernelCokernel", L.depth());
    int tested = 0;
    for (const auto& k : c.conflations()) {
        if (!small(k) || total(k.x) == 0) continue;
        ++tested;
        json why;
        if (!L.quotient_cokernel(k.i, k.p, &why)) {
            refute(kc, json{{"conflation", {mor_json(c, k.i), mor_json(c, k.p)}}, {"fails", "cokernel"}, {"test", why}});
            continue;
        }
        if (!L.quotient_kernel(k.i, k.p, &why))
            refute(kc, json{{"conflation", {mor_json(c, k.i), mor_json(c, k.p)}}, {"fails", "kernel"}, {"test", why}});
    }
    kc.regime = std::to_string(tested) + " listed conflations, universal properties against the indecs of C";
    out.push_back(kc);

    AxiomReport r0 = begin(c, "Q-R0", L.depth());
    RepPtr z = c.canon(c.zero_mult());
    if (!L.quotient_deflation(identity_morphism(c.q, z)).found) refute(r0, json{{"object", "0"}});
    r0.regime = "single check";
    out.push_back(r0);

    AxiomReport r0s = begin(c, "Q-R0*", L.depth());
    auto objs = nonzero_quant(c);
    for (const auto& x : objs)
        if (!L.quotient_deflation(zero_morphism(c.q, c.canon(x), z)).found) refute(r0s, json{{"object", c.mult_name(x)}});
    r0s.regime = "exhaustive over " + std::to_string(objs.size()) + " objects";
    out.push_back(r0s);

    // Deflations of the quotient: images of listed deflations.
    std::vector<RepMorphism> defl;
    for (const auto& k : c.conflations())
        if (small(k)) defl.push_back(k.p);
    for (const auto& k : c.split_conflations())
        if (small(k) && defl.size() < 120) defl.push_back(k.p);

    AxiomReport r1 = begin(c, "Q-R1", L.depth());
    int pairs = 0;
    for (const auto& a : defl)
        for (const auto& b : defl) {
            if (c.mult_of(b.source) != c.mult_of(a.target) || pairs >= 300) continue;
            ++pairs;
            RepMorphism comp = compose(b, c.transport(a));
            if (!L.quotient_deflation(comp).found)
                refute(r1, json{{"first", mor_json(c, a)}, {"second", mor_json(c, b)}});
        }
    r1.regime = std::to_string(pairs) + " composable pairs of listed deflations";
    out.push_back(r1);

    AxiomReport r2 = begin(c, "Q-R2", L.depth());
    int squares = 0;
    for (const auto& p : defl) {
        if (squares >= 150) break;
        Mult zt = c.mult_of(p.target);
        for (const auto& w : objs)
            for (const auto& g : c.sample(w, zt, 2).maps) {
                if (is_zero(g) || squares >= 150) continue;
                auto pb = c.pullback(p, g);
                if (!pb) {
                    refute(r2, json{{"deflation", mor_json(c, p)}, {"map", mor_json(c, g)}, {"fails", "no pullback in C"}});
                    continue;
                }
                ++squares;
                Mult pm = c.mult_of(pb->corner);
                bool ok = L.quotient_deflation(pb->second).found;
                for (const auto& t : test_objects(c)) {
                    if (!ok) break;
                    LocHom hp = L.hom(t, pm), hy = L.hom(t, c.mult_of(p.source)), hw = L.hom(t, w),
                           hz = L.hom(t, zt);
                    auto m1 = L.post_matrix(pb->first, hp, hy), m2 = L.post_matrix(pb->second, hp, hw);
                    auto a = L.post_matrix(p, hy, hz), b = L.post_matrix(g, hw, hz);
                    if (!m1 || !m2 || !a || !b) {
                        ok = false;
                        break;
                    }
                    int ry = hy.dim, rw = hw.dim, rz = hz.dim;
                    FieldMatrix stacked = vstack(*m1, *m2);
                    FieldMatrix diff = hstack(*a, scaled(*b, c.p() - 1));
                    int rs = hp.dim == 0 ? 0 : rank(stacked);
                    int kd = ry + rw - ((ry + rw) == 0 || rz == 0 ? 0 : rank(diff));
                    if (rs != hp.dim || kd != rs) ok = false;
                }
                if (!ok)
                    refute(r2, json{{"deflation", mor_json(c, p)}, {"map", mor_json(c, g)},
                                    {"fails", "quotient pullback"}});
            }
    }
    r2.regime = std::to_string(squares) + " pullback squares, universal property against the indecs of C";
    out.push_back(r2);

    AxiomReport r3 = begin(c, "Q-R3", L.depth());
    int cands = 0;
    std::vector<std::pair<Mult, Mult>> ends;
    for (const auto& y : objs)
        for (const auto& zz : objs) ends.emplace_back(y, zz);
    std::stable_sort(ends.begin(), ends.end(), [](const auto& a, const auto& b) {
        return total(a.first) + total(a.second) < total(b.first) + total(b.second);
    });
    for (const auto& [y, zz] : ends) {
            for (const auto& p : c.sample(y, zz, 2).maps) {
                if (!r3.holds || cands >= 120 || is_zero(p)) continue;
                if (c.is_deflation(p)) continue;
                ++cands;
                if (L.quotient_deflation(p).found) continue;
                json summands = json::array();
                json first;
                std::optional<RepMorphism> ker;
                for (int v : c.occurring) {
                    Mult yv = mult_add(y, c.unit(v));
                    if (total(yv) > c.size_bound || !c.admits(yv) || !c.admits(c.unit(v))) continue;
                    DirectSum ds = direct_sum(c.q, {c.canon(y), c.canon(c.unit(v))});
                    RepMorphism pi = compose(p, ds.projections[0]);
                    if (!L.quotient_deflation(pi).found) continue;
                    if (!ker) ker = L.find_quotient_kernel(p);
                    if (!ker) break;
                    summands.push_back(c.reg.items[v].name);
                    if (first.is_null())
                        first = json{{"i", mor_json(c, c.transport(ds.projections[0]))},
                                     {"composite", mor_json(c, c.transport(pi))}};
                }
                if (summands.empty()) continue;
                refute(r3, json{{"p", mor_json(c, p)},
                                {"kernel", mor_json(c, *ker)},
                                {"i", first["i"]},
                                {"composite", first["composite"]},
                                {"summands", summands}});
            }
    }
    r3.regime = "bounded search over " + std::to_string(cands) + " maps that are not deflations of C";
    if (r3.holds) r3.notes.push_back("no counterexample within the bound");
    out.push_back(r3);
    return out;
}

std::vector<AxiomReport> check_admissible_properties(const Localizer& L) {
    const CategoryInstance& c = L.cat();
    std::vector<AxiomReport> out;
    std::vector<std::string> ids = {"Adm-WeakIsoAdmissible", "Adm-2outof3", "Adm-Saturation", "Adm-AMorphisms"};
    if (!L.admissible()) {
        for (const auto& id : ids) {
            AxiomReport r = begin(c, id, L.depth());
            r.holds = false;
            r.applicable = false;
            r.notes.push_back("subcategory is not admissibly deflation-percolating");
            out.push_back(r);
        }
        return out;
    }
    auto objs = nonzero_quant(c);

    AxiomReport wa = begin(c, ids[0], L.depth());
    int chains = 0;
    for (const auto& x : objs)
        for (const auto& s : L.sources(x)) {
            ++chains;
            if (!L.is_admissible_weak_iso(s.chain.composite)) refute(wa, json{{"chain", chain_json(c, s.chain)}});
        }
    wa.regime = std::to_string(chains) + " enumerated weak isomorphisms";
    out.push_back(wa);

    AxiomReport tw = begin(c, ids[1], L.depth());
    int triples = 0;
    for (const auto& x : objs)
        for (const auto& y : objs)
            for (const auto& f : c.sample(x, y, 2).maps)
                for (const auto& z : objs)
                    for (const auto& g : c.sample(y, z, 2).maps) {
                        if (triples >= 3000) continue;
                        ++triples;
                        bool a = L.is_admissible_weak_iso(f), b = L.is_admissible_weak_iso(g);
                        bool ab = L.is_admissible_weak_iso(compose(g, f));
                        if (static_cast<int>(a) + static_cast<int>(b) + static_cast<int>(ab) == 2)
                            refute(tw, json{{"f", mor_json(c, f)}, {"g", mor_json(c, g)}, {"f_weak", a}, {"g_weak", b},
                                            {"gf_weak", ab}});
                    }
    tw.regime = std::to_string(triples) + " composable pairs";
    out.push_back(tw);

    AxiomReport sa = begin(c, ids[2], L.depth());
    int invertible = 0, maps = 0;
    for (const auto& x : objs)
        for (const auto& y : objs)
            for (const auto& f : c.sample(x, y, 2).maps) {
                ++maps;
                bool iso = true;
                for (const auto& t : test_objects(c)) {
                    LocHom hx = L.hom(t, x), hy = L.hom(t, y);
                    auto m = L.post_matrix(f, hx, hy);
                    if (!m || hx.dim != hy.dim || (hx.dim > 0 && rank(*m) != hx.dim)) {
                        iso = false;
                        break;
                    }
                }
                if (!iso) continue;
                ++invertible;
                if (!L.is_admissible_weak_iso(f)) refute(sa, json{{"map", mor_json(c, f)}});
            }
    sa.regime = std::to_string(maps) + " sampled maps, " + std::to_string(invertible) +
                " invertible in the quotient by the Yoneda test over the indecs of C";
    out.push_back(sa);

    AxiomReport am = begin(c, ids[3], L.depth());
    int amaps = 0;
    for (const auto& a : c.a_objects(c.quant_bound))
        for (const auto& b : c.a_objects(c.quant_bound))
            for (const auto& f : c.sample(a, b, 2).maps) {
                ++amaps;
                if (!L.is_admissible_weak_iso(f)) refute(am, json{{"map", mor_json(c, f)}});
            }
    am.regime = std::to_string(amaps) + " maps between objects of A";
    out.push_back(am);
    return out;
}

}  // namespace perc
