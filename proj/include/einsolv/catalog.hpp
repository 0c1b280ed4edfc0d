#pragma once

#include "einsolv/document.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace einsolv {

struct CatalogEntry {
  std::string name;
  std::string description;
  AlgebraDocument document;
  nlohmann::json expected;  // known results; keys depend on the entry
};

const std::vector<CatalogEntry>& catalog();

/// Throws InputError for an unknown name.
const CatalogEntry& catalog_entry(const std::string& name);

}  // namespace einsolv
