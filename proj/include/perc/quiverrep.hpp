#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "perc/exactla.hpp"

namespace perc {

struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
};

struct PathTerm {
    int coeff = 1;
    std::vector<int> path;  // arrow indices in traversal order
};

struct Relation {
    std::string name;
    std::vector<PathTerm> terms;
};

struct Quiver {
    int p = 7;
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;

    int nv() const { return static_cast<int>(vertices.size()); }
    int vertex_index(const std::string& name) const;
    int arrow_index(const std::string& name) const;
    // throws InputError on bad endpoints or non-composable relation paths
    void validate() const;
    Quiver opposite() const;
};

struct Representation {
    std::vector<int> dims;
    std::vector<FieldMatrix> maps;  // per arrow, dims[target] x dims[source]

    int total_dim() const;
    bool operator==(const Representation& o) const { return dims == o.dims && maps == o.maps; }
};

using RepPtr = std::shared_ptr<const Representation>;

Representation zero_rep(const Quiver& q);
// throws InputError naming the violated relation or shape
void validate_rep(const Quiver& q, const Representation& r);
FieldMatrix evaluate_path(const Quiver& q, const Representation& r, const std::vector<int>& path);

struct RepMorphism {
    RepPtr source;
    RepPtr target;
    std::vector<FieldMatrix> maps;  // per vertex, dims_target x dims_source
};

RepMorphism make_morphism(const Quiver& q, RepPtr s, RepPtr t, std::vector<FieldMatrix> maps);
bool is_intertwiner(const Quiver& q, const RepMorphism& f);
RepMorphism zero_morphism(const Quiver& q, RepPtr s, RepPtr t);
RepMorphism identity_morphism(const Quiver& q, RepPtr x);
// g after f
RepMorphism compose(const RepMorphism& g, const RepMorphism& f);
RepMorphism add(const RepMorphism& f, const RepMorphism& g);
RepMorphism sub(const RepMorphism& f, const RepMorphism& g);
RepMorphism scale(const RepMorphism& f, int c);
RepMorphism linear_combination(const Quiver& q, RepPtr s, RepPtr t, const std::vector<RepMorphism>& basis,
                               const Vec& coeffs);
bool is_zero(const RepMorphism& f);
bool equal(const RepMorphism& f, const RepMorphism& g);
bool is_injective(const RepMorphism& f);
bool is_surjective(const RepMorphism& f);
bool is_iso(const RepMorphism& f);
std::optional<RepMorphism> inverse_morphism(const RepMorphism& f);
// Flattened vertex matrices, used as hom coordinates.
Vec flatten(const RepMorphism& f);

std::vector<RepMorphism> hom_basis(const Quiver& q, RepPtr x, RepPtr y);
// Coordinates of f in the given basis; absent if f is outside the span.
std::optional<Vec> coordinates(const RepMorphism& f, const std::vector<RepMorphism>& basis);

struct SubObject {
    RepPtr object;
    RepMorphism map;
};

SubObject kernel_morphism(const Quiver& q, const RepMorphism& f);
SubObject cokernel_morphism(const Quiver& q, const RepMorphism& f);  // map: f.target -> coker

struct ImageFactorization {
    RepPtr image;
    RepMorphism epi;   // source -> image
    RepMorphism mono;  // image -> target
};
ImageFactorization image_factorization(const Quiver& q, const RepMorphism& f);

struct DirectSum {
    RepPtr object;
    std::vector<RepMorphism> inclusions;
    std::vector<RepMorphism> projections;
};
DirectSum direct_sum(const Quiver& q, const std::vector<RepPtr>& parts);

struct Square {
    RepPtr corner;
    RepMorphism first;   // pullback: corner -> f.source ; pushout: f.target -> corner
    RepMorphism second;  // pullback: corner -> g.source ; pushout: g.target -> corner
};
// f: X -> Z, g: Y -> Z
Square pullback(const Quiver& q, const RepMorphism& f, const RepMorphism& g);
// f: A -> X, g: A -> Y
Square pushout(const Quiver& q, const RepMorphism& f, const RepMorphism& g);

// Morphism X -> Y⊕Z or X⊕Y -> Z assembled from components.
RepMorphism column_morphism(const Quiver& q, const DirectSum& target, const std::vector<RepMorphism>& parts);
RepMorphism row_morphism(const Quiver& q, const DirectSum& source, const std::vector<RepMorphism>& parts);

struct Indec {
    std::string name;
    RepPtr rep;
};

struct EndoReport {
    bool local = false;
    bool exhaustive = false;
    int dim = 0;
};
EndoReport local_endomorphism_test(const Quiver& q, RepPtr x, std::mt19937_64& rng);

struct IndecRegistry {
    std::vector<Indec> items;
    int size() const { return static_cast<int>(items.size()); }
    int index(const std::string& name) const;
};

using Mult = std::vector<int>;

// Representation of a multiset: summands in registry order.
RepPtr canonical_sum(const Quiver& q, const IndecRegistry& reg, const Mult& m);

struct Decomposition {
    Mult mult;
    RepMorphism to_sum;    // x -> canonical_sum(mult)
    RepMorphism from_sum;  // canonical_sum(mult) -> x
};

// throws InputError naming x's dimension vector if no summand can be peeled
Decomposition decompose(const Quiver& q, const IndecRegistry& reg, RepPtr x);

struct IsoResult {
    std::optional<std::pair<RepMorphism, RepMorphism>> iso;
    bool conclusive = true;
};
IsoResult is_isomorphic(const Quiver& q, RepPtr x, RepPtr y, std::mt19937_64& rng);

std::string dimvec_string(const Representation& r);

}  // namespace perc
