#pragma once

#include <filesystem>
#include <istream>
#include <string_view>
#include <vector>

#include "wpe/graph.hpp"

namespace wpe {

enum class EdgeFormat {
  /// "u v [w]" per line; lines starting with '#' or '%' are comments.
  edge_list,
  /// Pajek .net: "*Vertices n", then "*Edges"/"*Arcs" (or the *list variants).
  pajek,
};

EdgeFormat parse_edge_format(std::string_view name);
std::string_view to_string(EdgeFormat format);

/// Reads every link record as-is. Throws ParseError (with line number) on
/// malformed records and EmptyGraphError when no record is present.
std::vector<RawRecord> load_edge_list(std::istream& in, EdgeFormat format);

std::vector<RawRecord> load_edge_file(const std::filesystem::path& path, EdgeFormat format);

}  // namespace wpe
