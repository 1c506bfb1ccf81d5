#pragma once

#include <string>
#include <vector>

#include "nil2/parser.hpp"

// Built-in groups, addressable as catalog references like "cant(3,2)" or
// "free(2,3,2)".

namespace nil2 {

struct CatalogEntry {
  std::string signature;    // e.g. "cant(p,n)"
  std::string description;
};

const std::vector<CatalogEntry>& catalog_entries();

// true if the string looks like a catalog reference name(args)
bool is_catalog_ref(const std::string& ref);

// resolve "name(a1,a2,...)" into a named presentation; throws
// std::invalid_argument for unknown names or bad arguments
NamedPresentation catalog_lookup(const std::string& ref);

// the groups exercised by the regression battery
std::vector<std::string> paper_catalog_refs();

}  // namespace nil2
