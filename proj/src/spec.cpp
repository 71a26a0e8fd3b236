#include "perc/spec.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace perc {

namespace {

[[noreturn]] void fail(int code, const std::string& where, const std::string& msg) {
    throw InputError(where + ": " + msg, code);
}

const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) fail(kSpecField, where, std::string("missing field '") + key + "'");
    return j.at(key);
}

FieldMatrix read_matrix(const json& j, int p, int rows, int cols, const std::string& where) {
    FieldMatrix m(p, rows, cols);
    if (!j.is_array()) fail(kSpecRepresentation, where, "matrix must be an array of rows");
    if (j.empty()) {
        if (rows * cols != 0) fail(kSpecRepresentation, where, "empty matrix for nonzero shape");
        return m;
    }
    if (static_cast<int>(j.size()) != rows)
        fail(kSpecRepresentation, where,
             "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            fail(kSpecRepresentation, where, "row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) m.set(i, c, j[i][c].get<long long>());
    }
    return m;
}

Quiver read_quiver(const json& spec) {
    Quiver q;
    q.p = spec.value("field_prime", 7);
    const json& jq = need(spec, "quiver", "spec");
    for (const auto& v : need(jq, "vertices", "quiver")) q.vertices.push_back(v.get<std::string>());
    if (jq.contains("arrows"))
        for (const auto& a : jq["arrows"]) {
            std::string name = need(a, "name", "arrow").get<std::string>();
            try {
                q.arrows.push_back({name, q.vertex_index(need(a, "source", "arrow " + name).get<std::string>()),
                                    q.vertex_index(need(a, "target", "arrow " + name).get<std::string>())});
            } catch (const InputError& e) {
                fail(kSpecQuiver, "arrow " + name, e.what());
            }
        }
    if (jq.contains("relations"))
        for (const auto& r : jq["relations"]) {
            Relation rel;
            rel.name = r.value("name", "relation" + std::to_string(q.relations.size()));
            for (const auto& t : need(r, "terms", "relation " + rel.name)) {
                PathTerm term;
                term.coeff = t.value("coeff", 1);
                for (const auto& a : need(t, "path", "relation " + rel.name)) {
                    try {
                        term.path.push_back(q.arrow_index(a.get<std::string>()));
                    } catch (const InputError& e) {
                        fail(kSpecQuiver, "relation " + rel.name, e.what());
                    }
                }
                rel.terms.push_back(std::move(term));
            }
            if (rel.terms.empty()) fail(kSpecQuiver, "relation " + rel.name, "no terms");
            q.relations.push_back(std::move(rel));
        }
    try {
        q.validate();
    } catch (const InputError& e) {
        fail(kSpecQuiver, "quiver", e.what());
    }
    return q;
}

Representation read_rep(const Quiver& q, const json& j, const std::string& where) {
    Representation r;
    r.dims.assign(q.nv(), 0);
    if (j.contains("dims"))
        for (auto it = j["dims"].begin(); it != j["dims"].end(); ++it) {
            int v;
            try {
                v = q.vertex_index(it.key());
            } catch (const InputError& e) {
                fail(kSpecRepresentation, where, e.what());
            }
            r.dims[v] = it.value().get<int>();
            if (r.dims[v] < 0) fail(kSpecRepresentation, where, "negative dimension");
        }
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        const auto& ar = q.arrows[a];
        int rows = r.dims[ar.target], cols = r.dims[ar.source];
        if (j.contains("maps") && j["maps"].contains(ar.name))
            r.maps.push_back(read_matrix(j["maps"][ar.name], q.p, rows, cols, where + " arrow " + ar.name));
        else
            r.maps.emplace_back(q.p, rows, cols);
    }
    try {
        validate_rep(q, r);
    } catch (const InputError& e) {
        fail(kSpecRepresentation, where, e.what());
    }
    return r;
}

Mult read_names(const CategoryInstance& c, const json& names, const std::string& where) {
    Mult m = c.zero_mult();
    for (const auto& n : names) {
        try {
            m[c.reg.index(n.get<std::string>())] += 1;
        } catch (const InputError& e) {
            fail(kSpecField, where, e.what());
        }
    }
    return m;
}

RepMorphism read_vertex_maps(const CategoryInstance& c, const json& j, RepPtr s, RepPtr t, const std::string& where) {
    std::vector<FieldMatrix> maps;
    for (int v = 0; v < c.q.nv(); ++v) {
        const std::string& vn = c.q.vertices[v];
        if (j.contains(vn))
            maps.push_back(read_matrix(j[vn], c.p(), t->dims[v], s->dims[v], where + " vertex " + vn));
        else
            maps.emplace_back(c.p(), t->dims[v], s->dims[v]);
    }
    RepMorphism f{s, t, std::move(maps)};
    if (!is_intertwiner(c.q, f)) fail(kSpecGenerator, where, "vertex maps do not commute with the arrows");
    return f;
}

}  // namespace

InstancePtr load_spec(const json& spec) {
    auto c = std::make_shared<CategoryInstance>();
    c->name = spec.value("name", "unnamed");
    c->q = read_quiver(spec);
    for (const auto& ind : need(spec, "indecomposables", "spec")) {
        std::string name = need(ind, "name", "indecomposable").get<std::string>();
        auto rep = std::make_shared<Representation>(read_rep(c->q, ind, "indecomposable " + name));
        c->reg.items.push_back({name, rep});
    }
    if (spec.contains("object_predicate")) {
        const json& op = spec["object_predicate"];
        std::string mode = op.value("mode", "all");
        if (mode == "all") {
            c->pred.mode = PredicateMode::All;
        } else if (mode == "karoubi_exclude") {
            c->pred.mode = PredicateMode::KaroubiExclude;
            for (const auto& n : need(op, "names", "object_predicate")) {
                try {
                    c->pred.excluded.push_back(c->reg.index(n.get<std::string>()));
                } catch (const InputError& e) {
                    fail(kSpecPredicate, "object_predicate", e.what());
                }
            }
        } else if (mode == "exclude_shapes") {
            c->pred.mode = PredicateMode::ExcludeShapes;
            for (const auto& sh : need(op, "shapes", "object_predicate")) {
                Shape s;
                for (auto it = sh.begin(); it != sh.end(); ++it) {
                    int idx;
                    try {
                        idx = c->reg.index(it.key());
                    } catch (const InputError& e) {
                        fail(kSpecPredicate, "object_predicate", e.what());
                    }
                    if (it.value().is_string() && it.value().get<std::string>() == "*") {
                        if (s.wildcard >= 0) fail(kSpecPredicate, "object_predicate", "at most one wildcard per shape");
                        s.wildcard = idx;
                    } else {
                        s.counts[idx] = it.value().get<int>();
                    }
                }
                c->pred.shapes.push_back(std::move(s));
            }
        } else {
            fail(kSpecPredicate, "object_predicate", "unknown mode '" + mode + "'");
        }
    }
    if (spec.contains("conflation_structure")) {
        const json& cs = spec["conflation_structure"];
        std::string st = cs.value("strategy", "AmbientExact");
        if (st == "AllKernelCokernel")
            c->strategy = Strategy::AllKernelCokernel;
        else if (st == "AmbientExact")
            c->strategy = Strategy::AmbientExact;
        else if (st == "GeneratedBy")
            c->strategy = Strategy::GeneratedBy;
        else
            fail(kSpecGenerator, "conflation_structure", "unknown strategy '" + st + "'");
        c->include_split = cs.value("include_split", true);
        if (cs.contains("generators"))
            for (const auto& g : cs["generators"]) {
                Generator gen;
                gen.name = need(g, "name", "generator").get<std::string>();
                std::string where = "generator " + gen.name;
                const json& terms = need(g, "terms", where);
                if (!terms.is_array() || terms.size() != 3) fail(kSpecGenerator, where, "terms must list three objects");
                gen.x = read_names(*c, terms[0], where);
                gen.y = read_names(*c, terms[1], where);
                gen.z = read_names(*c, terms[2], where);
                gen.inflation = read_vertex_maps(*c, need(g, "inflation", where), c->canon(gen.x), c->canon(gen.y),
                                                 where + " inflation");
                gen.deflation = read_vertex_maps(*c, need(g, "deflation", where), c->canon(gen.y), c->canon(gen.z),
                                                 where + " deflation");
                c->generators.push_back(std::move(gen));
            }
    }
    c->a_mask.assign(c->n(), false);
    if (spec.contains("subcategory"))
        for (const auto& n : spec["subcategory"]) {
            try {
                c->a_mask[c->reg.index(n.get<std::string>())] = true;
            } catch (const InputError& e) {
                fail(kSpecSubcategory, "subcategory", e.what());
            }
        }
    if (spec.contains("bounds")) {
        const json& b = spec["bounds"];
        c->size_bound = b.value("size", 5);
        c->depth = b.value("depth", 3);
        c->quant_bound = b.value("quant", 2);
    }
    c->seed = spec.value("seed", 1ULL);
    if (spec.contains("torsion_pair")) {
        const json& tp = spec["torsion_pair"];
        std::vector<int> t, f;
        try {
            for (const auto& n : need(tp, "torsion", "torsion_pair")) t.push_back(c->reg.index(n.get<std::string>()));
            for (const auto& n : need(tp, "torsionfree", "torsion_pair")) f.push_back(c->reg.index(n.get<std::string>()));
        } catch (const InputError& e) {
            if (e.code == kSpecField) throw;
            fail(kSpecSubcategory, "torsion_pair", e.what());
        }
        c->torsion = std::make_pair(t, f);
    }
    c->finalize();
    return c;
}

InstancePtr load_spec_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(kSpecParse, "spec", e.what());
    }
    try {
        return load_spec(j);
    } catch (const json::exception& e) {
        fail(kSpecField, "spec", e.what());
    }
}

InstancePtr load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(kSpecParse, path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_spec_text(ss.str());
}

json read_spec_json(const std::string& name_or_path) {
    std::string key = name_or_path;
    if (key.rfind("corpus/", 0) == 0) key = key.substr(7);
    if (key.size() > 5 && key.substr(key.size() - 5) == ".json") key = key.substr(0, key.size() - 5);
    std::ifstream in(name_or_path);
    std::string text;
    if (in) {
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else if (const std::string* t = builtin_text(key)) {
        text = *t;
    } else {
        fail(kSpecParse, name_or_path, "no such file or builtin spec");
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(kSpecParse, name_or_path, e.what());
    }
}

InstancePtr load_named(const std::string& name_or_path) {
    json j = read_spec_json(name_or_path);
    try {
        return load_spec(j);
    } catch (const json::exception& e) {
        fail(kSpecField, name_or_path, e.what());
    }
}

namespace {

json matrix_json(const FieldMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rows;
}

json names_json(const CategoryInstance& c, const Mult& m) {
    json a = json::array();
    for (int i = 0; i < c.n(); ++i)
        for (int k = 0; k < m[i]; ++k) a.push_back(c.reg.items[i].name);
    return a;
}

json vertex_maps_json(const CategoryInstance& c, const RepMorphism& f) {
    json j = json::object();
    for (int v = 0; v < c.q.nv(); ++v)
        if (!f.maps[v].is_zero()) j[c.q.vertices[v]] = matrix_json(f.maps[v]);
    return j;
}

}  // namespace

json spec_to_json(const CategoryInstance& c) {
    json j;
    j["name"] = c.name;
    j["field_prime"] = c.p();
    json jq;
    jq["vertices"] = c.q.vertices;
    jq["arrows"] = json::array();
    for (const auto& a : c.q.arrows)
        jq["arrows"].push_back({{"name", a.name}, {"source", c.q.vertices[a.source]}, {"target", c.q.vertices[a.target]}});
    jq["relations"] = json::array();
    for (const auto& r : c.q.relations) {
        json terms = json::array();
        for (const auto& t : r.terms) {
            json path = json::array();
            for (int a : t.path) path.push_back(c.q.arrows[a].name);
            terms.push_back({{"coeff", t.coeff}, {"path", path}});
        }
        jq["relations"].push_back({{"name", r.name}, {"terms", terms}});
    }
    j["quiver"] = jq;
    j["indecomposables"] = json::array();
    for (const auto& it : c.reg.items) {
        json dims = json::object(), maps = json::object();
        for (int v = 0; v < c.q.nv(); ++v)
            if (it.rep->dims[v]) dims[c.q.vertices[v]] = it.rep->dims[v];
        for (size_t a = 0; a < c.q.arrows.size(); ++a)
            if (!it.rep->maps[a].is_zero()) maps[c.q.arrows[a].name] = matrix_json(it.rep->maps[a]);
        j["indecomposables"].push_back({{"name", it.name}, {"dims", dims}, {"maps", maps}});
    }
    json op;
    switch (c.pred.mode) {
        case PredicateMode::All:
            op["mode"] = "all";
            break;
        case PredicateMode::KaroubiExclude: {
            op["mode"] = "karoubi_exclude";
            json names = json::array();
            for (int e : c.pred.excluded) names.push_back(c.reg.items[e].name);
            op["names"] = names;
            break;
        }
        case PredicateMode::ExcludeShapes: {
            op["mode"] = "exclude_shapes";
            json shapes = json::array();
            for (const auto& s : c.pred.shapes) {
                json sh = json::object();
                for (const auto& [i, k] : s.counts) sh[c.reg.items[i].name] = k;
                if (s.wildcard >= 0) sh[c.reg.items[s.wildcard].name] = "*";
                shapes.push_back(sh);
            }
            op["shapes"] = shapes;
            break;
        }
    }
    j["object_predicate"] = op;
    json cs;
    cs["strategy"] = strategy_name(c.strategy);
    cs["include_split"] = c.include_split;
    cs["generators"] = json::array();
    for (const auto& g : c.generators)
        cs["generators"].push_back({{"name", g.name},
                                    {"terms", {names_json(c, g.x), names_json(c, g.y), names_json(c, g.z)}},
                                    {"inflation", vertex_maps_json(c, g.inflation)},
                                    {"deflation", vertex_maps_json(c, g.deflation)}});
    j["conflation_structure"] = cs;
    json sub = json::array();
    for (int a : c.a_indecs()) sub.push_back(c.reg.items[a].name);
    j["subcategory"] = sub;
    j["bounds"] = {{"size", c.size_bound}, {"depth", c.depth}, {"quant", c.quant_bound}};
    j["seed"] = c.seed;
    if (c.torsion) {
        json t = json::array(), f = json::array();
        for (int i : c.torsion->first) t.push_back(c.reg.items[i].name);
        for (int i : c.torsion->second) f.push_back(c.reg.items[i].name);
        j["torsion_pair"] = {{"torsion", t}, {"torsionfree", f}};
    }
    return j;
}

json opposite_spec(const json& spec) {
    json o = spec;
    o["name"] = spec.value("name", "unnamed") + "^op";
    auto& jq = o["quiver"];
    if (jq.contains("arrows"))
        for (auto& a : jq["arrows"]) std::swap(a["source"], a["target"]);
    if (jq.contains("relations"))
        for (auto& r : jq["relations"])
            for (auto& t : r["terms"]) {
                json rev = json::array();
                for (auto it = t["path"].rbegin(); it != t["path"].rend(); ++it) rev.push_back(*it);
                t["path"] = rev;
            }
    auto transpose = [](const json& m) {
        json t = json::array();
        if (m.empty()) return t;
        for (size_t c = 0; c < m[0].size(); ++c) {
            json row = json::array();
            for (size_t r = 0; r < m.size(); ++r) row.push_back(m[r][c]);
            t.push_back(row);
        }
        return t;
    };
    for (auto& ind : o["indecomposables"])
        if (ind.contains("maps"))
            for (auto it = ind["maps"].begin(); it != ind["maps"].end(); ++it) it.value() = transpose(it.value());
    if (o.contains("conflation_structure") && o["conflation_structure"].contains("generators"))
        for (auto& g : o["conflation_structure"]["generators"]) {
            json terms = g["terms"];
            g["terms"] = json::array({terms[2], terms[1], terms[0]});
            json inf = json::object(), def = json::object();
            for (auto it = g["deflation"].begin(); it != g["deflation"].end(); ++it) inf[it.key()] = transpose(it.value());
            for (auto it = g["inflation"].begin(); it != g["inflation"].end(); ++it) def[it.key()] = transpose(it.value());
            g["inflation"] = inf;
            g["deflation"] = def;
        }
    if (o.contains("torsion_pair")) {
        json tp = o["torsion_pair"];
        o["torsion_pair"] = {{"torsion", tp["torsionfree"]}, {"torsionfree", tp["torsion"]}};
    }
    return o;
}

std::string fingerprint(const json& j) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace perc
