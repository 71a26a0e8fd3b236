#pragma once

#include <map>
#include <string>

#include "perc/report.hpp"

namespace perc::test {

// Instances are loaded once per process and shared.
inline const CategoryInstance& inst(const std::string& name) {
    static std::map<std::string, InstancePtr> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, load_named(name)).first;
    return *it->second;
}

inline Mult M(const CategoryInstance& c, const std::string& s) { return c.parse_mult(s); }

inline RepMorphism only_map(const CategoryInstance& c, const std::string& a, const std::string& b) {
    auto h = c.hom(c.parse_mult(a), c.parse_mult(b));
    if (h.size() != 1) throw std::logic_error("expected a one-dimensional hom space " + a + " -> " + b);
    return h[0];
}

}  // namespace perc::test
