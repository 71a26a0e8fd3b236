#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "perc/axioms.hpp"

namespace perc {

struct WeakIsoStep {
    bool inflation = false;  // A^-1-inflation, else A^-1-deflation
    RepMorphism map;
};

// Steps run from the source towards the target; composite = last ∘ ... ∘ first.
struct WeakIsoChain {
    RepPtr source;
    RepPtr target;
    std::vector<WeakIsoStep> steps;
    RepMorphism composite;
    int length() const { return static_cast<int>(steps.size()); }
};

WeakIsoChain identity_chain(const Quiver& q, const RepPtr& x);
// second after first
WeakIsoChain chain_then(const WeakIsoChain& first, const WeakIsoChain& second);
WeakIsoChain single_step(const WeakIsoStep& s);

struct WeakSource {
    Mult source;
    WeakIsoChain chain;  // canon(source) -> x
    int depth = 0;
};

struct Roof {
    WeakIsoChain s;  // X' -> X
    RepMorphism f;   // X' -> Y
};

struct ZeroVerdict {
    bool zero = false;
    bool exact = true;  // false when decided by bounded search with a negative answer
    std::string method;
};

struct LocHom {
    Mult x, y;
    int depth = 0;
    int dim = 0;
    std::vector<int> dims_by_depth;
    bool stabilized = false;
    Mult stage;                      // source of the stage realizing the dimension
    WeakIsoChain stage_chain;        // canon(stage) -> canon(x)
    std::vector<RepMorphism> basis;  // numerators over the stage, independent modulo zero maps
    std::vector<RepMorphism> zero;   // maps canon(stage) -> canon(y) that vanish in the quotient
    std::string method;
};

struct RoofCompare {
    bool equal = false;
    bool determinate = true;
    std::string method;
};

struct QuotientDeflation {
    bool found = false;
    std::string certificate;
};

struct LiftResult {
    Conflation lifted;      // on canonical objects
    WeakIsoChain t;         // Ybar -> Y
    WeakIsoChain tx;        // Xbar -> X
    WeakIsoChain tz;        // Zbar -> Z
    RepMorphism v;          // Ybar -> source of s with s∘v = t
    std::vector<std::string> trace;
};

class Localizer {
public:
    Localizer(const CategoryInstance& c, int depth = -1);
    Localizer(const CategoryInstance& c, std::vector<bool> mask, int depth);

    const CategoryInstance& cat() const { return c_; }
    const std::vector<bool>& mask() const { return mask_; }
    int depth() const { return depth_; }

    bool percolating() const;
    bool admissible() const;

    // A^-1-deflation or A^-1-inflation, when f is one.
    std::optional<WeakIsoStep> weak_iso_step(const RepMorphism& f) const;
    bool verify_chain(const WeakIsoChain& s) const;
    // Admissible with kernel and cokernel in A.
    bool is_admissible_weak_iso(const RepMorphism& f) const;

    const std::vector<WeakIsoStep>& one_steps(const Mult& y) const;
    const std::vector<WeakSource>& sources(const Mult& x, int depth) const;
    const std::vector<WeakSource>& sources(const Mult& x) const { return sources(x, depth_); }

    // Maps canon(x') -> canon(y) vanishing in the quotient, as an independent list.
    const std::vector<RepMorphism>& zero_space(const Mult& xp, const Mult& y) const;
    ZeroVerdict is_zero_in_quotient(const Roof& r) const;
    ZeroVerdict is_zero_in_quotient(const RepMorphism& f) const;

    // t in S into the source of g and h with s∘h = g∘t.
    std::optional<std::pair<WeakIsoChain, RepMorphism>> ore(const WeakIsoChain& s, const RepMorphism& g,
                                                             int max_len = -1) const;

    LocHom hom(const Mult& x, const Mult& y, int depth = -1) const;
    // Coordinates of a roof X -> Y in the basis of the given hom space.
    std::optional<Vec> coordinates(const LocHom& h, const Roof& r) const;
    std::optional<Vec> coordinates(const LocHom& h, const RepMorphism& f) const;
    // Matrices of φ ↦ Q(k)∘φ and φ ↦ φ∘Q(k); columns are images of basis vectors.
    std::optional<FieldMatrix> post_matrix(const RepMorphism& k, const LocHom& from, const LocHom& to) const;
    std::optional<FieldMatrix> pre_matrix(const RepMorphism& k, const LocHom& from, const LocHom& to) const;

    RoofCompare roof_equal(const Roof& a, const Roof& b) const;

    QuotientDeflation quotient_deflation(const RepMorphism& p) const;
    // Kernel-cokernel test of (Q(i), Q(p)) against roofs from and to the occurring indecs.
    bool quotient_cokernel(const RepMorphism& i, const RepMorphism& p, json* why = nullptr) const;
    bool quotient_kernel(const RepMorphism& i, const RepMorphism& p, json* why = nullptr) const;
    std::optional<RepMorphism> find_quotient_kernel(const RepMorphism& p) const;

    LiftResult lift_conflation(const Conflation& k, const WeakIsoChain& s) const;

private:
    const CategoryInstance& c_;
    std::vector<bool> mask_;
    int depth_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

Roof identity_roof(const CategoryInstance& c, const RepMorphism& f);

// Sources of a weak isomorphism into x, up to isomorphism of the source.
std::vector<WeakSource> enum_weak_iso_sources(const Localizer& L, const Mult& x, int depth);
std::optional<SubFactorization> factors_through_sub(const CategoryInstance& c, const RepMorphism& f);

AxiomReport check_rms(const Localizer& L);
std::vector<AxiomReport> check_quotient_axioms(const Localizer& L);
std::vector<AxiomReport> check_admissible_properties(const Localizer& L);
// Verifies the output contract of lift_conflation.
bool verify_lift(const Localizer& L, const Conflation& k, const WeakIsoChain& s, const LiftResult& r,
                 std::string* why = nullptr);

}  // namespace perc
