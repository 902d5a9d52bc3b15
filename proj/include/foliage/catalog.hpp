#pragma once

// Built-in models. Each entry carries the classification the engine is expected
// to return for its structures (Incomplete when there is no contact data).

#include "foliage/document.hpp"

#include <string>
#include <vector>

namespace foliage {

struct CatalogEntry {
    ModelDocument document;
    ContactLevel expected = ContactLevel::Incomplete;
    std::string summary;
};

const std::vector<CatalogEntry>& builtin_catalog();

/// nullptr when absent.
const CatalogEntry* find_catalog_entry(const std::string& name);

} // namespace foliage
