#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "stqft/complexes.hpp"

namespace stqft {

inline constexpr const char* kTriangulationSchema = "stqft.triangulation/1";

// Local edge reference (tet, u, v) as used in the optional JSON fields.
using EdgeRef = std::array<int, 3>;

struct TriangulationFile {
  std::string name;
  Triangulation complex;
  ShapeStructure shape;
  std::optional<EdgeRef> knot_edge;
  std::vector<EdgeRef> gauge_edges;  // one per interior vertex, in vertex order
};

int resolve_edge(const Triangulation& X, const EdgeRef& r);

// Throws Error(Schema) naming the offending field, or BadGluing for invalid gluings.
TriangulationFile parse_triangulation(const std::string& text);
TriangulationFile load_triangulation(const std::string& path);
std::string dump_triangulation(const TriangulationFile& f);

}  // namespace stqft
