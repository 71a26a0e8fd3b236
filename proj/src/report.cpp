#include "perc/report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace perc {

json prepare_spec(const std::string& name_or_path, const RunOptions& o) {
    json j = read_spec_json(name_or_path);
    if (o.bound) j["bounds"]["size"] = *o.bound;
    if (o.depth) j["bounds"]["depth"] = *o.depth;
    if (o.seed) j["seed"] = *o.seed;
    if (o.op) j = opposite_spec(j);
    return j;
}

InstancePtr load_instance(const std::string& name_or_path, const RunOptions& o) {
    return load_spec(prepare_spec(name_or_path, o));
}

bool Report::ok() const {
    for (const auto& f : facts)
        if (!f.ok) return false;
    return true;
}

json to_json(const Report& r) {
    json axioms = json::array();
    for (const auto& a : r.axioms) axioms.push_back(to_json(a));
    json facts = json::array();
    for (const auto& f : r.facts) facts.push_back({{"name", f.name}, {"ok", f.ok}, {"detail", f.detail}});
    return json{{"command", r.command},   {"instance", r.instance}, {"fingerprint", r.fingerprint},
                {"axioms", axioms},       {"labels", r.labels},     {"lochoms", r.lochoms},
                {"k0", r.k0},             {"extra", r.extra},       {"facts", facts},
                {"ok", r.ok()}};
}

Report parse_report(const json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.instance = j.at("instance").get<std::string>();
    r.fingerprint = j.at("fingerprint").get<std::string>();
    for (const auto& a : j.at("axioms")) r.axioms.push_back(report_from_json(a));
    r.labels = j.at("labels").get<std::map<std::string, bool>>();
    r.lochoms = j.at("lochoms");
    r.k0 = j.at("k0");
    r.extra = j.at("extra");
    for (const auto& f : j.at("facts"))
        r.facts.push_back({f.at("name").get<std::string>(), f.at("ok").get<bool>(), f.at("detail").get<std::string>()});
    return r;
}

namespace {

// One-line summary of a witness: morphisms become "source -> target".
std::string summarize(const json& w) {
    if (w.is_object() && w.contains("maps") && w.contains("source")) {
        return w["source"].get<std::string>() + " -> " + w["target"].get<std::string>();
    }
    if (w.is_object()) {
        std::string s;
        for (const auto& [k, v] : w.items()) {
            if (!s.empty()) s += "; ";
            s += k + ": " + summarize(v);
        }
        return s;
    }
    if (w.is_array()) {
        std::string s = "[";
        for (size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + summarize(w[i]);
        return s + "]";
    }
    if (w.is_string()) return w.get<std::string>();
    return w.dump();
}

std::string pad(std::string s, size_t n) {
    if (s.size() < n) s.append(n - s.size(), ' ');
    return s;
}

const AxiomReport* find(const std::vector<AxiomReport>& rs, const std::string& id) {
    for (const auto& r : rs)
        if (r.id == id) return &r;
    return nullptr;
}

Report start(const CategoryInstance& c, const std::string& command) {
    Report r;
    r.command = command;
    r.instance = c.name;
    r.fingerprint = fingerprint(spec_to_json(c));
    return r;
}

void fact(Report& r, const std::string& name, bool ok, const std::string& detail = "") {
    r.facts.push_back({name, ok, detail});
}

void verdict(Report& r, const std::string& id, bool expect) {
    const AxiomReport* a = find(r.axioms, id);
    if (!a) {
        fact(r, id + (expect ? " holds" : " fails"), false, "not checked");
        return;
    }
    fact(r, id + (expect ? " holds" : " fails"), a->holds == expect, a->holds ? "" : summarize(a->witness));
}

void append(std::vector<AxiomReport>& to, const std::vector<AxiomReport>& from) {
    to.insert(to.end(), from.begin(), from.end());
}

std::optional<Conflation> listed(const CategoryInstance& c, const std::string& x, const std::string& y,
                                 const std::string& z) {
    Mult mx = c.parse_mult(x), my = c.parse_mult(y), mz = c.parse_mult(z);
    for (const auto& k : c.conflations())
        if (k.x == mx && k.y == my && k.z == mz) return k;
    return std::nullopt;
}

void add_k0(Report& r, const Localizer& L) {
    auto w = k0_waldhausen(L);
    r.k0.push_back(json{{"kind", "waldhausen"}, {"presentation", to_json(w)}});
    if (!L.percolating()) return;
    auto q = k0_quotient(L);
    r.k0.push_back(json{{"kind", "quotient"}, {"presentation", to_json(q)}});
    bool same = w.free_rank == q.free_rank && w.invariant_factors == q.invariant_factors;
    fact(r, "K0 of the weak equivalences matches K0 of the quotient", same,
         w.group_string() + " vs " + q.group_string());
}

void add_cross(Report& r, const CategoryInstance& c, const Classification& cl) {
    for (const auto& x : cross_theorem_checks(c, cl))
        fact(r, "consistent: " + x.name, x.consistent, x.detail);
}

void mark_vertices_of(const CategoryInstance& c, std::vector<int>& removed) {
    std::vector<bool> hit(c.q.nv(), false);
    for (int i : c.a_indecs())
        for (int v = 0; v < c.q.nv(); ++v)
            if (c.reg.items[i].rep->dims[v] > 0) hit[v] = true;
    for (int v = 0; v < c.q.nv(); ++v)
        if (hit[v]) removed.push_back(v);
}

}  // namespace

std::string render_human(const Report& r) {
    std::ostringstream o;
    o << "percolate " << r.command << "  instance " << r.instance << "  fingerprint " << r.fingerprint << "\n";
    if (!r.axioms.empty()) {
        o << "\naxioms\n";
        for (const auto& a : r.axioms) {
            std::string v = !a.applicable ? "n/a" : a.holds ? "holds" : "FAILS";
            o << "  " << pad(a.id, 24) << pad(v, 7) << a.regime << "\n";
            if (a.applicable && !a.holds && !a.witness.is_null()) o << "      witness: " << summarize(a.witness) << "\n";
            for (const auto& n : a.notes) o << "      note: " << n << "\n";
        }
    }
    if (!r.labels.empty()) {
        o << "\nclassification\n";
        for (const auto& [k, v] : r.labels) o << "  " << pad(k, 34) << (v ? "yes" : "no") << "\n";
    }
    if (!r.lochoms.empty()) {
        o << "\nquotient hom spaces\n";
        for (const auto& h : r.lochoms) {
            o << "  Hom(" << h["from"].get<std::string>() << ", " << h["to"].get<std::string>() << ")  dim "
              << h["dim"].get<int>() << "  by depth";
            for (const auto& d : h["dims_by_depth"]) o << " " << d.get<int>();
            o << (h["stabilized"].get<bool>() ? "  stable" : "  not yet stable") << "  realized over "
              << h["stage"].get<std::string>() << "\n";
        }
    }
    if (!r.k0.empty()) {
        o << "\nGrothendieck groups\n";
        for (const auto& k : r.k0)
            o << "  " << pad(k["kind"].get<std::string>(), 12) << k["presentation"]["group"].get<std::string>() << "  ("
              << k["presentation"]["relations"].size() << " relations)\n";
    }
    if (r.extra.contains("trace")) {
        o << "\nlift\n";
        for (const auto& t : r.extra["trace"]) o << "  " << t.get<std::string>() << "\n";
    }
    if (!r.facts.empty()) {
        o << "\nfacts\n";
        for (const auto& f : r.facts) {
            o << "  [" << (f.ok ? "pass" : "FAIL") << "] " << f.name;
            if (!f.detail.empty()) o << "  (" << f.detail << ")";
            o << "\n";
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "\n%s in %.1f s\n", r.ok() ? "ok" : "failed", r.seconds);
    o << buf;
    return o.str();
}

json lochom_json(const CategoryInstance& c, const LocHom& h) {
    json basis = json::array();
    for (const auto& b : h.basis) basis.push_back(mor_json(c, b));
    return json{{"from", c.mult_name(h.x)},    {"to", c.mult_name(h.y)},
                {"depth", h.depth},            {"dim", h.dim},
                {"dims_by_depth", h.dims_by_depth}, {"stabilized", h.stabilized},
                {"stage", c.mult_name(h.stage)}, {"stage_length", h.stage_chain.length()},
                {"method", h.method},          {"basis", basis}};
}

Report run_check(const CategoryInstance& c, const std::vector<std::string>& axioms) {
    Report r = start(c, "check");
    auto ids = axioms.empty() ? exact_axiom_ids() : axioms;
    auto exact = exact_axiom_ids();
    for (const auto& id : ids) {
        AxiomReport a = std::find(exact.begin(), exact.end(), id) != exact.end() ? check_axiom(c, id)
                                                                                 : check_sub_axiom(c, c.a_mask, id);
        fact(r, id + " holds", a.holds, a.holds ? "" : summarize(a.witness));
        r.axioms.push_back(std::move(a));
    }
    return r;
}

Report run_classify(const CategoryInstance& c) {
    Report r = start(c, "classify");
    auto cl = classify_subcategory(c);
    r.axioms = cl.reports;
    r.labels = cl.labels;
    if (c.torsion) append(r.axioms, check_torsion_pair(c, c.torsion->first, c.torsion->second));
    r.axioms.push_back(check_qa_recognition(c));
    r.axioms.push_back(check_p4_criterion(c, c.a_mask));
    add_cross(r, c, cl);
    return r;
}

Report run_lochom(const CategoryInstance& c, const std::string& from, const std::string& to, int depth) {
    Report r = start(c, "lochom");
    Localizer L(c, depth);
    Mult x = c.parse_mult(from), y = c.parse_mult(to);
    if (!c.admits(x) || !c.admits(y)) throw InputError("lochom: object outside C");
    r.lochoms.push_back(lochom_json(c, L.hom(x, y)));
    r.extra["percolating"] = L.percolating();
    return r;
}

Report run_k0(const CategoryInstance& c) {
    Report r = start(c, "k0");
    Localizer L(c);
    add_k0(r, L);
    return r;
}

Report run_lift(const CategoryInstance& c, const std::string& conflation, const std::string& weak) {
    Report r = start(c, "lift");
    std::optional<Conflation> k;
    if (!conflation.empty() && conflation[0] == '#') {
        size_t idx = std::stoul(conflation.substr(1));
        if (idx >= c.conflations().size()) throw InputError("lift: conflation index out of range");
        k = c.conflations()[idx];
    } else {
        for (const auto& g : c.generators)
            if (g.name == conflation) {
                k = Conflation{g.x, g.y, g.z, c.transport(g.inflation), c.transport(g.deflation)};
            }
    }
    if (!k) throw InputError("lift: unknown conflation " + conflation);
    Localizer L(c);
    Mult src = c.parse_mult(weak);
    const WeakSource* s = nullptr;
    for (const auto& w : L.sources(k->y))
        if (w.source == src) s = &w;
    if (!s) throw InputError("lift: no weak isomorphism from " + weak + " into " + c.mult_name(k->y) + " within depth");
    auto res = L.lift_conflation(*k, s->chain);
    std::string why;
    bool ok = verify_lift(L, *k, s->chain, res, &why);
    fact(r, "lifted diagram commutes and its rows are conflations", ok, why);
    r.extra["conflation"] = {mor_json(c, k->i), mor_json(c, k->p)};
    r.extra["lifted"] = {mor_json(c, res.lifted.i), mor_json(c, res.lifted.p)};
    r.extra["lengths"] = {{"t", res.t.length()}, {"tx", res.tx.length()}, {"tz", res.tz.length()}};
    r.extra["trace"] = res.trace;
    return r;
}

int restricted_hom_dim(const CategoryInstance& c, const std::vector<int>& removed, int i, int j) {
    std::vector<int> keep_index(c.q.nv(), -1);
    Quiver q;
    q.p = c.q.p;
    for (int v = 0; v < c.q.nv(); ++v)
        if (std::find(removed.begin(), removed.end(), v) == removed.end()) {
            keep_index[v] = q.nv();
            q.vertices.push_back(c.q.vertices[v]);
        }
    std::vector<int> arrows;
    for (size_t a = 0; a < c.q.arrows.size(); ++a) {
        const auto& ar = c.q.arrows[a];
        if (keep_index[ar.source] < 0 || keep_index[ar.target] < 0) continue;
        arrows.push_back(static_cast<int>(a));
        q.arrows.push_back({ar.name, keep_index[ar.source], keep_index[ar.target]});
    }
    auto restrict = [&](const Representation& r) {
        auto out = std::make_shared<Representation>();
        for (int v = 0; v < c.q.nv(); ++v)
            if (keep_index[v] >= 0) out->dims.push_back(r.dims[v]);
        for (int a : arrows) out->maps.push_back(r.maps[a]);
        return RepPtr(out);
    };
    return static_cast<int>(hom_basis(q, restrict(*c.reg.items[i].rep), restrict(*c.reg.items[j].rep)).size());
}

std::string export_dot(const CategoryInstance& c) {
    std::ostringstream o;
    o << "digraph \"" << c.name << "\" {\n";
    for (int i = 0; i < c.n(); ++i) {
        o << "  \"" << c.reg.items[i].name << "\" [label=\"" << c.reg.items[i].name << "\\n"
          << dimvec_string(*c.reg.items[i].rep) << "\"";
        if (c.a_mask[i]) o << ", style=filled";
        o << "];\n";
    }
    for (int i = 0; i < c.n(); ++i)
        for (int j = 0; j < c.n(); ++j) {
            int d = c.hom_dim(i, j);
            if (i == j || d == 0) continue;
            o << "  \"" << c.reg.items[i].name << "\" -> \"" << c.reg.items[j].name << "\"";
            if (d > 1) o << " [label=\"" << d << "\"]";
            o << ";\n";
        }
    o << "}\n";
    return o.str();
}

namespace {

void demo_p3(Report& r, const CategoryInstance& c, const Classification& cl) {
    for (const char* id : {"P1", "P2", "P4"}) verdict(r, id, true);
    verdict(r, "P3", false);
    const auto& p3 = cl.get("P3");
    bool shape = !p3.holds && p3.witness["inflation"]["source"] == "P2" && p3.witness["inflation"]["target"] == "P3" &&
                 p3.witness["map"]["target"] == "I2";
    fact(r, "P3 witness is the composite P2 >-> P3 -> I2", shape, p3.holds ? "" : summarize(p3.witness));
    Localizer L(c);
    for (int d : {2, 3}) {
        auto h = L.hom(c.parse_mult("S3"), c.parse_mult("I2"), d);
        r.lochoms.push_back(lochom_json(c, h));
        fact(r, "Hom(S3, I2) vanishes in the quotient at depth " + std::to_string(d), h.dim == 0,
             "dimension " + std::to_string(h.dim));
    }
    auto k = listed(c, "P2", "P3", "S3");
    json why;
    bool fails = k && !L.quotient_cokernel(k->i, k->p, &why);
    fact(r, "Q(P3) -> Q(S3) is not a cokernel of Q(P2) -> Q(P3)", fails, why.is_null() ? "" : summarize(why));
    append(r.axioms, check_quotient_axioms(L));
}

void demo_p4(Report& r, const CategoryInstance& c) {
    for (const char* id : {"P1", "P2", "P3"}) verdict(r, id, true);
    verdict(r, "P4", false);
    Localizer L(c);
    auto maps = c.hom(c.parse_mult("tP2"), c.parse_mult("S3"));
    bool zero = !maps.empty(), none = !maps.empty();
    for (const auto& f : maps) {
        zero = zero && L.is_zero_in_quotient(f).zero;
        none = none && !factors_through_sub(c, f);
    }
    fact(r, "tP2 -> S3 vanishes in the quotient", zero);
    fact(r, "tP2 -> S3 does not factor through A", none);
    Mult allowed = c.parse_mult("S3+P2+P3");
    int bad = 0, count = 0;
    std::string first;
    for (const auto& s : L.sources(c.parse_mult("S3"))) {
        ++count;
        bool ok = s.source[c.reg.index("S3")] == 1;
        for (int i = 0; i < c.n(); ++i)
            if (allowed[i] == 0 && s.source[i] != 0) ok = false;
        if (!ok && bad++ == 0) first = c.mult_name(s.source);
    }
    fact(r, "every weak isomorphism source over S3 has the form S3 + P2^a + P3^b", bad == 0,
         std::to_string(count) + " sources" + (bad ? ", first exception " + first : ""));
    for (int d : {2, 3}) {
        auto h = L.hom(c.parse_mult("S3"), c.parse_mult("I3"), d);
        r.lochoms.push_back(lochom_json(c, h));
        fact(r, "Hom(S3, I3) vanishes in the quotient at depth " + std::to_string(d), h.dim == 0,
             "dimension " + std::to_string(h.dim) + ", realized over " + c.mult_name(h.stage));
    }
    append(r.axioms, check_quotient_axioms(L));
}

void demo_r3(Report& r, const CategoryInstance& c, const Classification& cl) {
    fact(r, "A is admissibly deflation-percolating", cl.labels.at("admissibly deflation-percolating"));
    Localizer L(c);
    auto adm = check_admissible_properties(L);
    append(r.axioms, adm);
    for (const auto& a : adm) verdict(r, a.id, true);
    r.axioms.push_back(check_rms(L));
    verdict(r, "RMS", true);
    append(r.axioms, check_quotient_axioms(L));
    for (const char* id : {"Q-R0", "Q-R0*", "Q-R1", "Q-R2"}) verdict(r, id, true);
    verdict(r, "Q-R3", false);
    const AxiomReport* q3 = find(r.axioms, "Q-R3");
    bool paper = false;
    if (q3 && !q3->holds) {
        const json& w = q3->witness;
        bool pb = false;
        for (const auto& s : w["summands"]) pb = pb || s == "Pb";
        paper = w["p"]["source"] == "Pc" && w["p"]["target"] == "Sc" && w["kernel"]["source"] == "Pb" &&
                w["kernel"]["target"] == "Pc" && pb;
    }
    fact(r, "Q-R3 witness: Q(l) has kernel Q(hg) and fails to be a deflation though its sum with 1 on Pb is one",
         paper);
    add_k0(r, L);
}

void demo_serre(Report& r, const CategoryInstance& c) {
    Localizer L(c);
    std::vector<int> removed;
    mark_vertices_of(c, removed);
    std::vector<int> rest;
    for (int i : c.occurring)
        if (!c.a_mask[i]) rest.push_back(i);
    int agree = 0, total_pairs = 0;
    std::string first;
    json table = json::array();
    for (int i : rest)
        for (int j : rest) {
            ++total_pairs;
            int d = L.hom(c.unit(i), c.unit(j)).dim;
            int o = restricted_hom_dim(c, removed, i, j);
            table.push_back({c.reg.items[i].name, c.reg.items[j].name, d, o});
            if (d == o) ++agree;
            else if (first.empty())
                first = c.reg.items[i].name + " -> " + c.reg.items[j].name + ": " + std::to_string(d) + " vs " +
                        std::to_string(o);
        }
    r.extra["hom_table"] = table;
    fact(r, "quotient hom dimensions equal the restriction oracle on all indec pairs outside A",
         agree == total_pairs, std::to_string(agree) + "/" + std::to_string(total_pairs) + (first.empty() ? "" : ", " + first));
    append(r.axioms, check_quotient_axioms(L));
    verdict(r, "Q-R3", true);
    add_k0(r, L);
}

void demo_torsion(Report& r, const CategoryInstance& c, const Classification& cl) {
    if (!c.torsion) throw InputError("demo torsion: the instance has no torsion pair");
    append(r.axioms, check_torsion_pair(c, c.torsion->first, c.torsion->second));
    verdict(r, "TorsionPair", true);
    verdict(r, "Cohereditary", true);
    fact(r, "F is deflation-percolating", cl.labels.at("deflation-percolating"));
    verdict(r, "RightSpecial", false);
    const auto& rs = cl.get("RightSpecial");
    bool shape = !rs.holds && rs.witness["inflation"]["source"] == "X" && rs.witness["inflation"]["target"] == "I2";
    fact(r, "right-special witness is the inflation X >-> I2", shape, rs.holds ? "" : summarize(rs.witness));
    Localizer L(c);
    add_k0(r, L);
}

}  // namespace

Report run_demo(const std::string& name, const RunOptions& o) {
    auto t0 = std::chrono::steady_clock::now();
    auto inst = load_instance(name, o);
    const CategoryInstance& c = *inst;
    Report r = start(c, "demo " + name);
    auto cl = classify_subcategory(c);
    r.axioms = cl.reports;
    r.labels = cl.labels;
    if (name == "p3") demo_p3(r, c, cl);
    else if (name == "p4") demo_p4(r, c);
    else if (name == "r3") demo_r3(r, c, cl);
    else if (name == "serre") demo_serre(r, c);
    else if (name == "torsion") demo_torsion(r, c, cl);
    else throw InputError("unknown demo " + name + " (expected p3, p4, r3, serre or torsion)");
    add_cross(r, c, cl);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace perc
