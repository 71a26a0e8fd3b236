#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "perc/confcat.hpp"

namespace perc {

using json = nlohmann::json;

// Validation error codes carried by InputError::code.
enum SpecError {
    kSpecParse = 10,
    kSpecField = 11,
    kSpecQuiver = 12,
    kSpecRepresentation = 13,
    kSpecIndecomposable = 14,
    kSpecPredicate = 15,
    kSpecGenerator = 16,
    kSpecSubcategory = 17,
};

InstancePtr load_spec(const json& spec);
InstancePtr load_spec_text(const std::string& text);
InstancePtr load_spec_file(const std::string& path);

// Builtin names resolve to the embedded corpus; anything else is read from disk.
InstancePtr load_named(const std::string& name_or_path);
json read_spec_json(const std::string& name_or_path);

json spec_to_json(const CategoryInstance& c);
json opposite_spec(const json& spec);
std::string fingerprint(const json& j);

std::vector<std::string> builtin_names();
const std::string* builtin_text(const std::string& name);

}  // namespace perc
