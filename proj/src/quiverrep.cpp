#include "perc/quiverrep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace perc {

int Quiver::vertex_index(const std::string& name) const {
    for (int i = 0; i < nv(); ++i)
        if (vertices[i] == name) return i;
    throw InputError("unknown vertex '" + name + "'");
}

int Quiver::arrow_index(const std::string& name) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return static_cast<int>(i);
    throw InputError("unknown arrow '" + name + "'");
}

void Quiver::validate() const {
    if (!is_prime(p)) throw InputError("field_prime " + std::to_string(p) + " is not prime");
    for (const auto& a : arrows)
        if (a.source < 0 || a.source >= nv() || a.target < 0 || a.target >= nv())
            throw InputError("arrow '" + a.name + "' has an undeclared endpoint");
    for (const auto& rel : relations) {
        int s = -1, t = -1;
        for (const auto& term : rel.terms) {
            if (term.path.empty()) throw InputError("relation '" + rel.name + "' has an empty path");
            for (size_t k = 1; k < term.path.size(); ++k)
                if (arrows[term.path[k]].source != arrows[term.path[k - 1]].target)
                    throw InputError("relation '" + rel.name + "' has a non-composable path");
            int ts = arrows[term.path.front()].source, tt = arrows[term.path.back()].target;
            if (s < 0) {
                s = ts;
                t = tt;
            } else if (s != ts || t != tt) {
                throw InputError("relation '" + rel.name + "' mixes paths with different endpoints");
            }
        }
    }
}

Quiver Quiver::opposite() const {
    Quiver o = *this;
    for (auto& a : o.arrows) std::swap(a.source, a.target);
    for (auto& rel : o.relations)
        for (auto& term : rel.terms) std::reverse(term.path.begin(), term.path.end());
    return o;
}

int Representation::total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

Representation zero_rep(const Quiver& q) {
    Representation r;
    r.dims.assign(q.nv(), 0);
    for (size_t a = 0; a < q.arrows.size(); ++a) r.maps.emplace_back(q.p, 0, 0);
    return r;
}

FieldMatrix evaluate_path(const Quiver& q, const Representation& r, const std::vector<int>& path) {
    FieldMatrix m = FieldMatrix::identity(q.p, r.dims[q.arrows[path.front()].source]);
    for (int a : path) m = r.maps[a] * m;
    return m;
}

void validate_rep(const Quiver& q, const Representation& r) {
    if (static_cast<int>(r.dims.size()) != q.nv()) throw InputError("dimension vector has wrong length");
    if (r.maps.size() != q.arrows.size()) throw InputError("arrow map count mismatch");
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        const auto& ar = q.arrows[a];
        if (r.maps[a].rows() != r.dims[ar.target] || r.maps[a].cols() != r.dims[ar.source])
            throw InputError("arrow '" + ar.name + "' matrix has shape " + std::to_string(r.maps[a].rows()) + "x" +
                             std::to_string(r.maps[a].cols()) + ", expected " + std::to_string(r.dims[ar.target]) +
                             "x" + std::to_string(r.dims[ar.source]));
    }
    for (const auto& rel : q.relations) {
        const auto& first = rel.terms.front().path;
        FieldMatrix sum(q.p, r.dims[q.arrows[first.back()].target], r.dims[q.arrows[first.front()].source]);
        for (const auto& term : rel.terms) sum = sum + scaled(evaluate_path(q, r, term.path), term.coeff);
        if (!sum.is_zero()) throw InputError("relation '" + rel.name + "' is violated");
    }
}

bool is_intertwiner(const Quiver& q, const RepMorphism& f) {
    const auto& x = *f.source;
    const auto& y = *f.target;
    if (static_cast<int>(f.maps.size()) != q.nv()) return false;
    for (int v = 0; v < q.nv(); ++v)
        if (f.maps[v].rows() != y.dims[v] || f.maps[v].cols() != x.dims[v]) return false;
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        int u = q.arrows[a].source, v = q.arrows[a].target;
        if (f.maps[v] * x.maps[a] != y.maps[a] * f.maps[u]) return false;
    }
    return true;
}

RepMorphism make_morphism(const Quiver& q, RepPtr s, RepPtr t, std::vector<FieldMatrix> maps) {
    RepMorphism f{std::move(s), std::move(t), std::move(maps)};
    if (!is_intertwiner(q, f)) throw std::logic_error("constructed map is not an intertwiner");
    return f;
}

RepMorphism zero_morphism(const Quiver& q, RepPtr s, RepPtr t) {
    std::vector<FieldMatrix> m;
    for (int v = 0; v < q.nv(); ++v) m.emplace_back(q.p, t->dims[v], s->dims[v]);
    return {std::move(s), std::move(t), std::move(m)};
}

RepMorphism identity_morphism(const Quiver& q, RepPtr x) {
    std::vector<FieldMatrix> m;
    for (int v = 0; v < q.nv(); ++v) m.push_back(FieldMatrix::identity(q.p, x->dims[v]));
    return {x, x, std::move(m)};
}

RepMorphism compose(const RepMorphism& g, const RepMorphism& f) {
    if (f.target->dims != g.source->dims) throw InputError("compose: dimension vectors do not match");
    std::vector<FieldMatrix> m;
    for (size_t v = 0; v < f.maps.size(); ++v) m.push_back(g.maps[v] * f.maps[v]);
    return {f.source, g.target, std::move(m)};
}

RepMorphism add(const RepMorphism& f, const RepMorphism& g) {
    std::vector<FieldMatrix> m;
    for (size_t v = 0; v < f.maps.size(); ++v) m.push_back(f.maps[v] + g.maps[v]);
    return {f.source, f.target, std::move(m)};
}

RepMorphism sub(const RepMorphism& f, const RepMorphism& g) {
    std::vector<FieldMatrix> m;
    for (size_t v = 0; v < f.maps.size(); ++v) m.push_back(f.maps[v] - g.maps[v]);
    return {f.source, f.target, std::move(m)};
}

RepMorphism scale(const RepMorphism& f, int c) {
    std::vector<FieldMatrix> m;
    for (const auto& x : f.maps) m.push_back(scaled(x, c));
    return {f.source, f.target, std::move(m)};
}

RepMorphism linear_combination(const Quiver& q, RepPtr s, RepPtr t, const std::vector<RepMorphism>& basis,
                               const Vec& coeffs) {
    RepMorphism f = zero_morphism(q, std::move(s), std::move(t));
    for (size_t i = 0; i < basis.size(); ++i)
        if (coeffs[i]) f = add(f, scale(basis[i], coeffs[i]));
    return f;
}

bool is_zero(const RepMorphism& f) {
    return std::all_of(f.maps.begin(), f.maps.end(), [](const FieldMatrix& m) { return m.is_zero(); });
}

bool equal(const RepMorphism& f, const RepMorphism& g) { return f.maps == g.maps; }

bool is_injective(const RepMorphism& f) {
    for (const auto& m : f.maps)
        if (rank(m) != m.cols()) return false;
    return true;
}

bool is_surjective(const RepMorphism& f) {
    for (const auto& m : f.maps)
        if (rank(m) != m.rows()) return false;
    return true;
}

bool is_iso(const RepMorphism& f) {
    for (const auto& m : f.maps)
        if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    return true;
}

std::optional<RepMorphism> inverse_morphism(const RepMorphism& f) {
    std::vector<FieldMatrix> m;
    for (const auto& x : f.maps) {
        auto inv = inverse(x);
        if (!inv) return std::nullopt;
        m.push_back(*inv);
    }
    return RepMorphism{f.target, f.source, std::move(m)};
}

Vec flatten(const RepMorphism& f) {
    Vec out;
    for (const auto& m : f.maps) out.insert(out.end(), m.data().begin(), m.data().end());
    return out;
}

std::vector<RepMorphism> hom_basis(const Quiver& q, RepPtr x, RepPtr y) {
    int nv = q.nv();
    std::vector<int> off(nv + 1, 0);
    for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + y->dims[v] * x->dims[v];
    int unknowns = off[nv];
    if (unknowns == 0) return {};
    int eqs = 0;
    for (const auto& a : q.arrows) eqs += y->dims[a.target] * x->dims[a.source];
    FieldMatrix sys(q.p, eqs, unknowns);
    int row = 0;
    for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
        int u = q.arrows[ai].source, v = q.arrows[ai].target;
        const FieldMatrix& ya = y->maps[ai];
        const FieldMatrix& xa = x->maps[ai];
        int dxu = x->dims[u], dxv = x->dims[v], dyu = y->dims[u], dyv = y->dims[v];
        for (int i = 0; i < dyv; ++i)
            for (int j = 0; j < dxu; ++j, ++row) {
                // (Y_a F_u)(i,j) - (F_v X_a)(i,j)
                for (int k = 0; k < dyu; ++k) {
                    int col = off[u] + k * dxu + j;
                    sys.set(row, col, sys(row, col) + ya(i, k));
                }
                for (int l = 0; l < dxv; ++l) {
                    int col = off[v] + i * dxv + l;
                    sys.set(row, col, sys(row, col) - xa(l, j));
                }
            }
    }
    std::vector<RepMorphism> basis;
    for (const Vec& sol : kernel_basis(sys)) {
        std::vector<FieldMatrix> m;
        for (int v = 0; v < nv; ++v) {
            FieldMatrix fv(q.p, y->dims[v], x->dims[v]);
            for (int i = 0; i < y->dims[v]; ++i)
                for (int j = 0; j < x->dims[v]; ++j) fv.set(i, j, sol[off[v] + i * x->dims[v] + j]);
            m.push_back(std::move(fv));
        }
        basis.push_back({x, y, std::move(m)});
    }
    return basis;
}

std::optional<Vec> coordinates(const RepMorphism& f, const std::vector<RepMorphism>& basis) {
    Vec target = flatten(f);
    if (basis.empty()) {
        if (std::all_of(target.begin(), target.end(), [](int v) { return v == 0; })) return Vec{};
        return std::nullopt;
    }
    int p = f.maps.empty() ? 7 : f.maps.front().prime();
    std::vector<Vec> cols;
    for (const auto& b : basis) cols.push_back(flatten(b));
    return solve_linear(FieldMatrix::from_columns(p, static_cast<int>(target.size()), cols), target);
}

SubObject kernel_morphism(const Quiver& q, const RepMorphism& f) {
    const auto& x = *f.source;
    std::vector<FieldMatrix> incl;
    auto k = std::make_shared<Representation>();
    for (int v = 0; v < q.nv(); ++v) {
        incl.push_back(kernel_matrix(f.maps[v]));
        k->dims.push_back(incl.back().cols());
    }
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        int u = q.arrows[a].source, v = q.arrows[a].target;
        auto z = solve_matrix(incl[v], x.maps[a] * incl[u]);
        if (!z) throw std::logic_error("kernel is not a subrepresentation");
        k->maps.push_back(*z);
    }
    RepPtr kp = k;
    return {kp, make_morphism(q, kp, f.source, std::move(incl))};
}

SubObject cokernel_morphism(const Quiver& q, const RepMorphism& f) {
    const auto& y = *f.target;
    std::vector<FieldMatrix> proj;
    auto c = std::make_shared<Representation>();
    for (int v = 0; v < q.nv(); ++v) {
        proj.push_back(cokernel_matrix(f.maps[v]));
        c->dims.push_back(proj.back().rows());
    }
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        int u = q.arrows[a].source, v = q.arrows[a].target;
        auto zt = solve_matrix(proj[u].transpose(), (proj[v] * y.maps[a]).transpose());
        if (!zt) throw std::logic_error("cokernel arrow map does not descend");
        c->maps.push_back(zt->transpose());
    }
    RepPtr cp = c;
    return {cp, make_morphism(q, f.target, cp, std::move(proj))};
}

ImageFactorization image_factorization(const Quiver& q, const RepMorphism& f) {
    const auto& y = *f.target;
    std::vector<FieldMatrix> mono, epi;
    auto im = std::make_shared<Representation>();
    for (int v = 0; v < q.nv(); ++v) {
        mono.push_back(column_space(f.maps[v]));
        im->dims.push_back(mono.back().cols());
        auto e = solve_matrix(mono.back(), f.maps[v]);
        epi.push_back(*e);
    }
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        int u = q.arrows[a].source, v = q.arrows[a].target;
        auto z = solve_matrix(mono[v], y.maps[a] * mono[u]);
        if (!z) throw std::logic_error("image is not a subrepresentation");
        im->maps.push_back(*z);
    }
    RepPtr ip = im;
    return {ip, make_morphism(q, f.source, ip, std::move(epi)), make_morphism(q, ip, f.target, std::move(mono))};
}

DirectSum direct_sum(const Quiver& q, const std::vector<RepPtr>& parts) {
    auto s = std::make_shared<Representation>();
    s->dims.assign(q.nv(), 0);
    for (const auto& x : parts)
        for (int v = 0; v < q.nv(); ++v) s->dims[v] += x->dims[v];
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        FieldMatrix m(q.p, s->dims[q.arrows[a].target], s->dims[q.arrows[a].source]);
        int r = 0, c = 0;
        for (const auto& x : parts) {
            m.put(r, c, x->maps[a]);
            r += x->dims[q.arrows[a].target];
            c += x->dims[q.arrows[a].source];
        }
        s->maps.push_back(std::move(m));
    }
    RepPtr sp = s;
    DirectSum out{sp, {}, {}};
    std::vector<int> off(q.nv(), 0);
    for (const auto& x : parts) {
        std::vector<FieldMatrix> inc, pr;
        for (int v = 0; v < q.nv(); ++v) {
            FieldMatrix i(q.p, sp->dims[v], x->dims[v]);
            for (int k = 0; k < x->dims[v]; ++k) i.set(off[v] + k, k, 1);
            pr.push_back(i.transpose());
            inc.push_back(std::move(i));
            off[v] += x->dims[v];
        }
        out.inclusions.push_back({x, sp, std::move(inc)});
        out.projections.push_back({sp, x, std::move(pr)});
    }
    return out;
}

RepMorphism column_morphism(const Quiver& q, const DirectSum& target, const std::vector<RepMorphism>& parts) {
    RepMorphism f = zero_morphism(q, parts.front().source, target.object);
    for (size_t i = 0; i < parts.size(); ++i) f = add(f, compose(target.inclusions[i], parts[i]));
    return f;
}

RepMorphism row_morphism(const Quiver& q, const DirectSum& source, const std::vector<RepMorphism>& parts) {
    RepMorphism f = zero_morphism(q, source.object, parts.front().target);
    for (size_t i = 0; i < parts.size(); ++i) f = add(f, compose(parts[i], source.projections[i]));
    return f;
}

Square pullback(const Quiver& q, const RepMorphism& f, const RepMorphism& g) {
    DirectSum s = direct_sum(q, {f.source, g.source});
    SubObject k = kernel_morphism(q, row_morphism(q, s, {f, scale(g, -1)}));
    return {k.object, compose(s.projections[0], k.map), compose(s.projections[1], k.map)};
}

Square pushout(const Quiver& q, const RepMorphism& f, const RepMorphism& g) {
    DirectSum s = direct_sum(q, {f.target, g.target});
    SubObject c = cokernel_morphism(q, column_morphism(q, s, {f, scale(g, -1)}));
    return {c.object, compose(c.map, s.inclusions[0]), compose(c.map, s.inclusions[1])};
}

namespace {

bool is_nilpotent(const RepMorphism& f) {
    for (const auto& m : f.maps) {
        FieldMatrix pw = m;
        for (int k = 1; k < m.rows() && !pw.is_zero(); ++k) pw = pw * m;
        if (!pw.is_zero()) return false;
    }
    return true;
}

bool advance(Vec& c, int p) {
    for (auto& x : c) {
        if (++x < p) return true;
        x = 0;
    }
    return false;
}

}  // namespace

EndoReport local_endomorphism_test(const Quiver& q, RepPtr x, std::mt19937_64& rng) {
    auto basis = hom_basis(q, x, x);
    EndoReport rep;
    rep.dim = static_cast<int>(basis.size());
    if (basis.empty()) return rep;  // the zero representation is not indecomposable
    auto ok = [&](const Vec& c) {
        RepMorphism e = linear_combination(q, x, x, basis, c);
        return is_iso(e) || is_nilpotent(e);
    };
    double space = 1;
    for (size_t i = 0; i < basis.size(); ++i) space *= q.p;
    if (space <= 20000) {
        rep.exhaustive = true;
        Vec c(basis.size(), 0);
        while (advance(c, q.p))
            if (!ok(c)) return rep;
        rep.local = true;
        return rep;
    }
    for (int t = 0; t < 400; ++t) {
        Vec c(basis.size());
        for (auto& v : c) v = static_cast<int>(rng() % q.p);
        if (!ok(c)) return rep;
    }
    rep.local = true;
    return rep;
}

int IndecRegistry::index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (items[i].name == name) return i;
    throw InputError("unknown indecomposable '" + name + "'");
}

namespace {

std::vector<int> slots(const Mult& m) {
    std::vector<int> s;
    for (size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k) s.push_back(static_cast<int>(i));
    return s;
}

bool dims_leq(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

}  // namespace

RepPtr canonical_sum(const Quiver& q, const IndecRegistry& reg, const Mult& m) {
    std::vector<RepPtr> parts;
    for (int i : slots(m)) parts.push_back(reg.items[i].rep);
    return direct_sum(q, parts).object;
}

std::string dimvec_string(const Representation& r) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < r.dims.size(); ++i) os << (i ? "," : "") << r.dims[i];
    os << ")";
    return os.str();
}

Decomposition decompose(const Quiver& q, const IndecRegistry& reg, RepPtr x) {
    Mult empty(reg.size(), 0);
    if (x->total_dim() == 0) {
        RepPtr z = canonical_sum(q, reg, empty);
        return {empty, zero_morphism(q, x, z), zero_morphism(q, z, x)};
    }
    for (int i = 0; i < reg.size(); ++i) {
        RepPtr ind = reg.items[i].rep;
        if (!dims_leq(ind->dims, x->dims)) continue;
        auto S = hom_basis(q, ind, x);
        if (S.empty()) continue;
        auto R = hom_basis(q, x, ind);
        if (R.empty()) continue;
        // End(I) is local, so r∘s is invertible for some basis pair whenever I is a summand.
        std::optional<RepMorphism> sec, ret;
        for (const auto& s : S) {
            for (const auto& r : R) {
                RepMorphism e = compose(r, s);
                if (auto inv = inverse_morphism(e)) {
                    sec = s;
                    ret = compose(*inv, r);
                    break;
                }
            }
            if (sec) break;
        }
        if (!sec) continue;
        SubObject k = kernel_morphism(q, *ret);
        RepMorphism idem = sub(identity_morphism(q, x), compose(*sec, *ret));
        std::vector<FieldMatrix> pim;
        for (int v = 0; v < q.nv(); ++v) pim.push_back(*solve_matrix(k.map.maps[v], idem.maps[v]));
        RepMorphism pi = make_morphism(q, x, k.object, std::move(pim));
        Decomposition rest = decompose(q, reg, k.object);

        Mult m = rest.mult;
        m[i] += 1;
        RepPtr sum = canonical_sum(q, reg, m);
        int before = 0;
        for (int j = 0; j < i; ++j) before += rest.mult[j];
        std::vector<int> rest_slots = slots(rest.mult);
        RepMorphism to_rest = compose(rest.to_sum, pi);
        RepMorphism from_rest = compose(k.map, rest.from_sum);
        std::vector<FieldMatrix> to, from;
        for (int v = 0; v < q.nv(); ++v) {
            int off = 0;
            for (int t = 0; t < before; ++t) off += reg.items[rest_slots[t]].rep->dims[v];
            int dv = ind->dims[v];
            const FieldMatrix& tr = to_rest.maps[v];
            FieldMatrix tv(q.p, sum->dims[v], x->dims[v]);
            tv.put(0, 0, tr.block(0, 0, off, tr.cols()));
            tv.put(off, 0, ret->maps[v]);
            tv.put(off + dv, 0, tr.block(off, 0, tr.rows() - off, tr.cols()));
            const FieldMatrix& fr = from_rest.maps[v];
            FieldMatrix fv(q.p, x->dims[v], sum->dims[v]);
            fv.put(0, 0, fr.block(0, 0, fr.rows(), off));
            fv.put(0, off, sec->maps[v]);
            fv.put(0, off + dv, fr.block(0, off, fr.rows(), fr.cols() - off));
            to.push_back(std::move(tv));
            from.push_back(std::move(fv));
        }
        return {m, make_morphism(q, x, sum, std::move(to)), make_morphism(q, sum, x, std::move(from))};
    }
    throw InputError("cannot decompose representation with dimension vector " + dimvec_string(*x) +
                     " over the registered indecomposables");
}

IsoResult is_isomorphic(const Quiver& q, RepPtr x, RepPtr y, std::mt19937_64& rng) {
    IsoResult res;
    if (x->dims != y->dims) return res;
    auto basis = hom_basis(q, x, y);
    auto attempt = [&](const Vec& c) -> bool {
        RepMorphism f = linear_combination(q, x, y, basis, c);
        if (auto inv = inverse_morphism(f)) {
            res.iso = std::make_pair(f, *inv);
            return true;
        }
        return false;
    };
    if (x->total_dim() == 0) {
        res.iso = std::make_pair(zero_morphism(q, x, y), zero_morphism(q, y, x));
        return res;
    }
    if (basis.empty()) return res;
    for (int t = 0; t < 32; ++t) {
        Vec c(basis.size());
        for (auto& v : c) v = static_cast<int>(rng() % q.p);
        if (attempt(c)) return res;
    }
    if (basis.size() <= 6) {
        Vec c(basis.size(), 0);
        while (advance(c, q.p))
            if (attempt(c)) return res;
        return res;
    }
    res.conclusive = false;
    return res;
}

}  // namespace perc
