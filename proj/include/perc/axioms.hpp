#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "perc/confcat.hpp"

namespace perc {

using json = nlohmann::json;

struct AxiomReport {
    std::string id;
    bool holds = false;
    bool applicable = true;
    json witness;   // counterexample diagram when the axiom fails
    json evidence;  // constructive data found while checking
    std::string bound;
    std::string regime;
    std::vector<std::string> notes;
};

json to_json(const AxiomReport& r);
AxiomReport report_from_json(const json& j);
json mor_json(const CategoryInstance& c, const RepMorphism& f);
std::string object_label(const CategoryInstance& c, const RepPtr& x);

// Membership in a subcategory given by a mask over the registry.
bool in_sub(const CategoryInstance& c, const std::vector<bool>& mask, const Mult& m);

// Exact: f lies in the span of maps through indecs of the subcategory.
struct SubFactorization {
    Mult via;
    RepMorphism first;   // X -> via
    RepMorphism second;  // via -> Y
};
std::optional<SubFactorization> factor_through(const CategoryInstance& c, const RepMorphism& f,
                                               const std::vector<bool>& mask);
// Independent maps spanning the ideal of maps X -> Y through the subcategory.
std::vector<RepMorphism> ideal_span(const CategoryInstance& c, const RepPtr& x, const RepPtr& y,
                                    const std::vector<bool>& mask);
// Basis (flattened coordinates) of the maps X -> Y factoring through the subcategory.
std::vector<Vec> ideal_basis(const CategoryInstance& c, const RepPtr& x, const RepPtr& y, const std::vector<bool>& mask);
bool in_ideal(const CategoryInstance& c, const RepMorphism& f, const std::vector<bool>& mask);

// g with g∘d = f, h with s∘h = f.
std::optional<RepMorphism> solve_post(const CategoryInstance& c, const RepMorphism& d, const RepMorphism& f);
std::optional<RepMorphism> solve_pre(const CategoryInstance& c, const RepMorphism& s, const RepMorphism& f);

// Factorization X ->> A' -> A of a map into the subcategory.
struct P2Factor {
    RepMorphism deflation;  // X ->> A'
    RepMorphism rest;       // A' -> A
    Mult a_prime;
    std::string route;
};
std::optional<P2Factor> p2_factor(const CategoryInstance& c, const RepMorphism& f, const std::vector<bool>& mask);
// X -> ⊕ a^{dim Hom(X,a)} over the indecs of the subcategory; every map into the subcategory factors through it.
RepMorphism universal_sub_map(const CategoryInstance& c, const Mult& x, const std::vector<bool>& mask);

// The P3 diagram for a composite t∘i factoring through the subcategory.
struct P3Diagram {
    RepMorphism f;       // X ->> A
    RepMorphism f_push;  // Y ->> P
    RepMorphism i_push;  // A >-> P
    RepMorphism induced; // P -> T
};
std::optional<P3Diagram> p3_diagram(const CategoryInstance& c, const RepMorphism& i, const RepMorphism& t,
                                    const std::vector<bool>& mask);

std::vector<AxiomReport> check_exact_axioms(const CategoryInstance& c, const std::vector<std::string>& which = {});
AxiomReport check_axiom(const CategoryInstance& c, const std::string& id);
std::vector<std::string> exact_axiom_ids();

struct Classification {
    std::vector<AxiomReport> reports;
    std::map<std::string, bool> labels;
    bool holds(const std::string& id) const;
    const AxiomReport& get(const std::string& id) const;
};
Classification classify_subcategory(const CategoryInstance& c);
Classification classify_subcategory(const CategoryInstance& c, const std::vector<bool>& mask);

// Individual subcategory axioms; id in {P1..P4, A1..A3, StronglyFiltering, RightSpecial, DualA2, CardenasPair}.
AxiomReport check_sub_axiom(const CategoryInstance& c, const std::vector<bool>& mask, const std::string& id);

std::vector<AxiomReport> check_torsion_pair(const CategoryInstance& c, const std::vector<int>& t,
                                            const std::vector<int>& f);
AxiomReport check_qa_recognition(const CategoryInstance& c);
AxiomReport check_qa_recognition(const CategoryInstance& c, const std::vector<bool>& mask);
// Verdict of the cokernel criterion for P4, with whether it applies.
AxiomReport check_p4_criterion(const CategoryInstance& c, const std::vector<bool>& mask);

// Consistency of the verdict table with the implications between the notions.
struct CrossCheck {
    std::string name;
    bool consistent;
    std::string detail;
};
std::vector<CrossCheck> cross_theorem_checks(const CategoryInstance& c, const Classification& cl);

}  // namespace perc
