#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "perc/quiverrep.hpp"

namespace perc {

enum class PredicateMode { All, ExcludeShapes, KaroubiExclude };

struct Shape {
    std::map<int, int> counts;  // indec -> exact multiplicity
    int wildcard = -1;          // indec allowed with any multiplicity
};

struct ObjectPredicate {
    PredicateMode mode = PredicateMode::All;
    std::vector<Shape> shapes;
    std::vector<int> excluded;

    bool admits(const Mult& m) const;
};

enum class Strategy { AllKernelCokernel, AmbientExact, GeneratedBy };
std::string strategy_name(Strategy s);

struct Generator {
    std::string name;
    Mult x, y, z;
    RepMorphism inflation;
    RepMorphism deflation;
};

struct Conflation {
    Mult x, y, z;
    RepMorphism i;  // canonical(x) -> canonical(y)
    RepMorphism p;  // canonical(y) -> canonical(z)
};

struct ConflationVerdict {
    bool ok = false;
    std::string reason;
    std::vector<std::string> evidence;
};

struct Morphisms {
    std::vector<RepMorphism> maps;
    std::string regime;
};

class CategoryInstance {
public:
    std::string name;
    Quiver q;
    IndecRegistry reg;
    ObjectPredicate pred;
    Strategy strategy = Strategy::AmbientExact;
    std::vector<Generator> generators;
    bool include_split = true;
    std::vector<bool> a_mask;
    int size_bound = 5;
    int depth = 3;
    int quant_bound = 2;
    std::uint64_t seed = 1;
    std::optional<std::pair<std::vector<int>, std::vector<int>>> torsion;

    // Derived at finalize().
    std::vector<int> occurring;      // indecs appearing in some admitted object
    std::vector<int> rel_projective; // GeneratedBy only

    void finalize();
    int n() const { return reg.size(); }
    int p() const { return q.p; }

    Mult zero_mult() const { return Mult(reg.size(), 0); }
    Mult unit(int i) const;
    bool admits(const Mult& m) const { return pred.admits(m); }
    bool in_A(const Mult& m) const;
    bool a_empty() const;
    std::vector<int> a_indecs() const;

    RepPtr canon(const Mult& m) const;
    std::optional<Mult> canonical_mult(const RepPtr& x) const;
    Mult mult_of(const RepPtr& x) const;
    Decomposition canonicalize(const RepPtr& x) const;
    bool in_C(const RepPtr& x) const;

    const std::vector<RepMorphism>& indec_hom(int i, int j) const;
    int hom_dim(int i, int j) const { return static_cast<int>(indec_hom(i, j).size()); }
    int hom_dim(const Mult& a, const Mult& b) const;
    std::vector<RepMorphism> hom(const Mult& a, const Mult& b) const;
    std::vector<RepMorphism> hom(const RepPtr& x, const RepPtr& y) const;

    // Bounded object sets, lexicographic by (summand count, multiplicity vector).
    std::vector<Mult> objects(int max_summands) const;
    std::vector<Mult> a_objects(int max_summands) const;
    std::vector<Mult> quant_objects() const { return objects(quant_bound); }

    // Seeded sample of Hom(a,b): all maps up to scalar when dim <= 2, else basis plus 64 combinations.
    Morphisms sample(const Mult& a, const Mult& b, int extra = 64) const;
    std::mt19937_64 rng_for(const std::string& tag) const;

    // Conflation structure.
    ConflationVerdict is_conflation(const RepMorphism& i, const RepMorphism& p) const;
    bool is_deflation(const RepMorphism& p) const;
    bool is_inflation(const RepMorphism& i) const;
    std::optional<Conflation> deflation_conflation(const RepMorphism& p) const;
    std::optional<Conflation> inflation_conflation(const RepMorphism& i) const;
    std::optional<ImageFactorization> admissible_factorization(const RepMorphism& f) const;

    // Constructions inside C (ambient ones, transported to canonical form, when they land in C).
    std::optional<SubObject> kernel(const RepMorphism& f) const;
    std::optional<SubObject> cokernel(const RepMorphism& f) const;
    std::optional<Square> pullback(const RepMorphism& f, const RepMorphism& g) const;
    std::optional<Square> pushout(const RepMorphism& f, const RepMorphism& g) const;
    std::optional<ImageFactorization> image(const RepMorphism& f) const;

    // Universal properties tested against every indec occurring in C.
    bool is_kernel_in_C(const RepMorphism& k, const RepMorphism& f) const;
    bool is_cokernel_in_C(const RepMorphism& f, const RepMorphism& c) const;
    bool is_pullback_in_C(const RepMorphism& a, const RepMorphism& b, const RepMorphism& f,
                          const RepMorphism& g) const;
    bool is_pushout_in_C(const RepMorphism& f, const RepMorphism& g, const RepMorphism& a,
                         const RepMorphism& b) const;

    // Enumerated conflations whose middle and end terms lie in the quantifier range.
    const std::vector<Conflation>& conflations() const;
    const std::vector<Conflation>& split_conflations() const;

    RepMorphism transport(const RepMorphism& f) const;  // conjugate endpoints to canonical form
    std::string mult_name(const Mult& m) const;
    Mult parse_mult(const std::string& text) const;
    Mult dims_of(const Mult& m) const;

    CategoryInstance();
    CategoryInstance(const CategoryInstance&) = delete;
    CategoryInstance& operator=(const CategoryInstance&) = delete;

private:
    struct Cache;
    std::shared_ptr<Cache> cache_;
    void build_conflations() const;
};

using InstancePtr = std::shared_ptr<CategoryInstance>;

bool dims_leq(const std::vector<int>& a, const std::vector<int>& b);
Mult mult_add(const Mult& a, const Mult& b);
int total(const Mult& m);

}  // namespace perc
