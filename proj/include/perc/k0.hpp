#pragma once

#include <string>
#include <vector>

#include "perc/localize.hpp"

namespace perc {

struct K0Presentation {
    std::vector<std::string> generators;           // indec names
    std::vector<std::vector<long long>> relations; // rows over the generators, deduplicated
    std::vector<std::string> origins;              // one per row
    std::vector<std::string> invariant_factors;    // nontrivial torsion factors, as decimal strings
    int free_rank = 0;
    std::vector<std::string> notes;

    std::string group_string() const;  // e.g. "Z^2 + Z/2"
};

json to_json(const K0Presentation& k);

// Relations from bounded conflations and weak isomorphisms of bounded depth.
K0Presentation k0_waldhausen(const Localizer& L);
// Relations from conflations and from isomorphisms of the quotient found by roof search.
K0Presentation k0_quotient(const Localizer& L);

// Shared by both: reduce rows over the generators and fill in the invariants.
void finish_presentation(K0Presentation& k);

}  // namespace perc
