#include "stqft/triangulation_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stqft {

using nlohmann::json;

namespace {

constexpr double kPiIO = 3.14159265358979323846;

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorKind::Schema, msg); }

int get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) schema(field + ": expected an integer");
  return j.get<int>();
}

EdgeRef parse_edge_ref(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) schema(field + ": expected [tet, u, v]");
  return {get_int(j[0], field + "[0]"), get_int(j[1], field + "[1]"), get_int(j[2], field + "[2]")};
}

int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

int resolve_edge(const Triangulation& X, const EdgeRef& r) {
  if (r[0] < 0 || r[0] >= X.num_tets() || r[1] < 0 || r[1] > 3 || r[2] < 0 || r[2] > 3 || r[1] == r[2])
    throw Error(ErrorKind::Schema, "edge reference out of range");
  return X.tet_edge(r[0], local_edge(r[1], r[2]));
}

TriangulationFile parse_triangulation(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    schema("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) schema("top level: expected an object");
  if (j.contains("schema") && j["schema"] != kTriangulationSchema)
    schema("schema: unsupported version " + j["schema"].dump());

  TriangulationFile out;
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema("name: expected a string");
    out.name = j["name"].get<std::string>();
  }
  if (!j.contains("tets")) schema("tets: missing");
  const int n = get_int(j["tets"], "tets");
  if (n <= 0) schema("tets: must be positive");

  if (!j.contains("orientations") || !j["orientations"].is_array() || j["orientations"].size() != std::size_t(n))
    schema("orientations: expected an array of length tets");
  std::vector<int> orient;
  for (int t = 0; t < n; ++t) {
    const int o = get_int(j["orientations"][t], "orientations[" + std::to_string(t) + "]");
    if (o != 1 && o != -1) schema("orientations[" + std::to_string(t) + "]: must be +1 or -1");
    orient.push_back(o);
  }

  std::vector<Gluing> glu;
  if (j.contains("gluings")) {
    if (!j["gluings"].is_array()) schema("gluings: expected an array");
    for (std::size_t i = 0; i < j["gluings"].size(); ++i) {
      const json& g = j["gluings"][i];
      const std::string f = "gluings[" + std::to_string(i) + "]";
      if (!g.is_object() || !g.contains("a") || !g.contains("b") || !g.contains("perm"))
        schema(f + ": expected {a, b, perm}");
      if (!g["a"].is_array() || g["a"].size() != 2 || !g["b"].is_array() || g["b"].size() != 2)
        schema(f + ": a and b must be [tet, face]");
      if (!g["perm"].is_array() || g["perm"].size() != 3) schema(f + ".perm: expected three vertices");
      Gluing x;
      x.tet_a = get_int(g["a"][0], f + ".a[0]");
      x.face_a = get_int(g["a"][1], f + ".a[1]");
      x.tet_b = get_int(g["b"][0], f + ".b[0]");
      x.face_b = get_int(g["b"][1], f + ".b[1]");
      for (int k = 0; k < 3; ++k) x.perm[k] = get_int(g["perm"][k], f + ".perm");
      glu.push_back(x);
    }
  }
  out.complex = Triangulation(orient, glu);

  if (j.contains("angles")) {
    const json& a = j["angles"];
    if (!a.is_array() || a.size() != std::size_t(n)) schema("angles: expected an array of length tets");
    for (int t = 0; t < n; ++t) {
      const std::string f = "angles[" + std::to_string(t) + "]";
      if (!a[t].is_array() || a[t].size() != 3) schema(f + ": expected three angles");
      std::array<double, 3> row{};
      for (int q = 0; q < 3; ++q) {
        if (!a[t][q].is_number()) schema(f + ": angles must be numbers");
        row[q] = a[t][q].get<double>();
        if (!(row[q] > 0.0 && row[q] < kPiIO)) schema(f + ": angle outside (0, pi) in tetrahedron " + std::to_string(t));
      }
      if (std::abs(row[0] + row[1] + row[2] - kPiIO) > 1e-12)
        schema(f + ": angle sum differs from pi in tetrahedron " + std::to_string(t));
      out.shape.alpha.push_back(row);
    }
  }
  if (j.contains("knot_edge")) {
    out.knot_edge = parse_edge_ref(j["knot_edge"], "knot_edge");
    resolve_edge(out.complex, *out.knot_edge);
  }
  if (j.contains("gauge_edges")) {
    if (!j["gauge_edges"].is_array()) schema("gauge_edges: expected an array");
    for (std::size_t i = 0; i < j["gauge_edges"].size(); ++i) {
      out.gauge_edges.push_back(parse_edge_ref(j["gauge_edges"][i], "gauge_edges[" + std::to_string(i) + "]"));
      resolve_edge(out.complex, out.gauge_edges.back());
    }
  }
  return out;
}

TriangulationFile load_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Schema, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_triangulation(ss.str());
}

std::string dump_triangulation(const TriangulationFile& f) {
  const Triangulation& X = f.complex;
  json j;
  j["schema"] = kTriangulationSchema;
  if (!f.name.empty()) j["name"] = f.name;
  j["tets"] = X.num_tets();
  j["orientations"] = X.orientations();
  j["gluings"] = json::array();
  for (const Gluing& g : X.gluings())
    j["gluings"].push_back({{"a", {g.tet_a, g.face_a}}, {"b", {g.tet_b, g.face_b}}, {"perm", g.perm}});
  if (!f.shape.alpha.empty()) j["angles"] = f.shape.alpha;
  if (f.knot_edge) j["knot_edge"] = *f.knot_edge;
  if (!f.gauge_edges.empty()) j["gauge_edges"] = f.gauge_edges;
  return j.dump(2);
}

}  // namespace stqft
