#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perc/k0.hpp"
#include "perc/spec.hpp"

namespace perc {

struct RunOptions {
    std::optional<int> bound;
    std::optional<int> depth;
    std::optional<std::uint64_t> seed;
    bool op = false;
};

// Spec json after applying bound, depth, seed and the opposite-category flag.
json prepare_spec(const std::string& name_or_path, const RunOptions& o);
InstancePtr load_instance(const std::string& name_or_path, const RunOptions& o);

struct Fact {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct Report {
    std::string command;
    std::string instance;
    std::string fingerprint;
    std::vector<AxiomReport> axioms;
    std::map<std::string, bool> labels;
    json lochoms = json::array();
    json k0 = json::array();
    json extra = json::object();
    std::vector<Fact> facts;
    double seconds = 0;  // human rendering only

    bool ok() const;
};

// Machine rendering; omits timing so identical runs give identical bytes.
json to_json(const Report& r);
Report parse_report(const json& j);
std::string render_human(const Report& r);

json lochom_json(const CategoryInstance& c, const LocHom& h);

Report run_check(const CategoryInstance& c, const std::vector<std::string>& axioms);
Report run_classify(const CategoryInstance& c);
Report run_lochom(const CategoryInstance& c, const std::string& from, const std::string& to, int depth);
Report run_k0(const CategoryInstance& c);
// conflation: a generator name or "#k" for the k-th listed conflation; weak: source object of a chain into the middle term.
Report run_lift(const CategoryInstance& c, const std::string& conflation, const std::string& weak);
Report run_demo(const std::string& name, const RunOptions& o);

std::string export_dot(const CategoryInstance& c);

// Hom dimensions between restrictions to the full subquiver avoiding the given vertices.
int restricted_hom_dim(const CategoryInstance& c, const std::vector<int>& removed, int i, int j);

}  // namespace perc
