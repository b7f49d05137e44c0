#pragma once

#include <string>

#include "curv4/catalog.hpp"
#include "curv4/geometry.hpp"

namespace curv4 {

/// Loads a user metric from a manifest JSON document:
///   {
///     "name": "...",
///     "coordinates": ["x0","x1","x2","x3"],
///     "domain": [[lo,hi],[lo,hi],[lo,hi],[lo,hi]],
///     "metric": {"g00": "expr", "g01": "expr", ...},   // upper triangle,
///                                                      // missing entries = 0
///     "params": {"name": value},                       // optional
///     "known": {"scalar": s, "einstein": bool, "lambda1": l}  // optional
///   }
/// Validates the schema, parses every expression, and SPD-spot-checks the
/// metric on 16 Halton points of the domain. Returns a CatalogEntry-shaped
/// record so the CLI treats files and built-ins uniformly.
CatalogEntry load_manifest(const std::string& path);
CatalogEntry parse_manifest(const std::string& json_text, const std::string& origin);

}  // namespace curv4
