#include "dimerbfz/io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace dimerbfz {

namespace {

// Wraps nlohmann errors so every malformed document is a ValidationError.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const Json& x : j) {
    if (!x.is_number_integer()) throw ValidationError(std::string(what) + " must hold integers");
    out.push_back(x.get<int>());
  }
  return out;
}

Rational parse_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ValidationError("coefficient must be an integer or a \"p/q\" string");
  Rational r;
  if (r.set_str(j.get<std::string>(), 10) != 0 || r.get_den() == 0)
    throw ValidationError("bad coefficient \"" + j.get<std::string>() + "\"");
  r.canonicalize();
  return r;
}

std::string arrow_kind_name(ArrowKind k) { return k == ArrowKind::horizontal ? "horizontal" : "inclined"; }

}  // namespace

WeylWord parse_word(const std::string& text) {
  std::istringstream in(text);
  WeylWord out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    int letter = 0;
    try {
      letter = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || used == 0) throw ValidationError("bad letter \"" + token + "\" in word");
    out.push_back(letter);
  }
  return out;
}

std::vector<int> parse_interleave(const std::string& text) {
  std::vector<int> out;
  for (char c : text) {
    if (c == ' ') continue;
    if (c != '0' && c != '1') throw ValidationError("interleave must consist of 0 and 1");
    out.push_back(c - '0');
  }
  return out;
}

CartanMatrix parse_cartan(const std::string& text) {
  const auto start = text.find_first_not_of(" \t\n");
  if (start != std::string::npos && text[start] == '[') {
    const Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_array()) throw ValidationError("Cartan matrix must be a JSON array of rows");
    std::vector<std::vector<int>> rows;
    for (const Json& row : j) rows.push_back(int_list(row, "Cartan matrix row"));
    return CartanMatrix::from_entries(std::move(rows));
  }
  return CartanMatrix::named(text);
}

// Quiver ----------------------------------------------------------------------

Json to_json(const Quiver& quiver) {
  Json vertices = Json::array();
  for (const Vertex& v : quiver.vertices()) {
    Json jv{{"id", v.id}, {"frozen", v.frozen}};
    if (v.label) jv["label"] = *v.label;
    vertices.push_back(std::move(jv));
  }
  Json arrows = Json::array();
  for (const Arrow& a : quiver.arrows()) arrows.push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
  return {{"vertices", std::move(vertices)}, {"arrows", std::move(arrows)}};
}

Quiver quiver_from_json(const Json& j) {
  return guarded("quiver", [&] {
    std::vector<Vertex> vertices;
    const Json& jv = field(j, "vertices");
    if (!jv.is_array()) throw ValidationError("\"vertices\" must be an array");
    for (const Json& v : jv) {
      Vertex vertex;
      vertex.id = field(v, "id").get<int>();
      vertex.frozen = v.value("frozen", false);
      if (v.contains("label") && !v.at("label").is_null()) vertex.label = v.at("label").get<std::string>();
      vertices.push_back(std::move(vertex));
    }
    std::vector<Arrow> arrows;
    const Json& ja = field(j, "arrows");
    if (!ja.is_array()) throw ValidationError("\"arrows\" must be an array");
    for (const Json& a : ja)
      arrows.push_back({field(a, "id").get<int>(), field(a, "src").get<int>(), field(a, "tgt").get<int>()});
    return Quiver(std::move(vertices), std::move(arrows));
  });
}

Json to_json(const BfzQuiver& bfz) {
  Json j = to_json(bfz.quiver);
  for (Json& v : j["vertices"]) {
    const int k = v["id"].get<int>();
    v["letter"] = bfz.word.letter(k);
    v["position"] = k;
    v["exchangeable"] = is_exchangeable(bfz.word, k);
  }
  for (Json& a : j["arrows"]) a["kind"] = arrow_kind_name(bfz.kind(a["id"].get<int>()));
  return j;
}

Json to_json(const CylinderLayout& layout) {
  Json sheets = Json::array();
  for (std::size_t s = 0; s < layout.branches().sheet_count(); ++s)
    sheets.push_back({{"sheet", s}, {"strings", layout.branches().branches[s]}});
  Json placement = Json::array();
  for (const auto& [v, p] : layout.placement())
    placement.push_back({{"vertex", v}, {"string", p.string}, {"height", p.height}});
  return {{"sheets", std::move(sheets)}, {"placement", std::move(placement)}};
}

CylinderLayout layout_from_json(const Json& j, const CartanMatrix& cartan) {
  return guarded("layout", [&] {
    std::map<int, Placement> placement;
    const Json& jp = field(j, "placement");
    if (!jp.is_array()) throw ValidationError("\"placement\" must be an array");
    for (const Json& p : jp) {
      const int v = field(p, "vertex").get<int>();
      if (!placement.emplace(v, Placement{field(p, "string").get<int>(), field(p, "height").get<int>()}).second)
        throw ValidationError("vertex " + std::to_string(v) + " placed twice");
    }
    return CylinderLayout(branch_decompose(dynkin_graph(cartan)), std::move(placement));
  });
}

Json to_json(const Seed& seed) {
  Json variables = Json::array();
  for (std::size_t i = 0; i < seed.quiver().vertices().size(); ++i) {
    const int id = seed.quiver().vertices()[i].id;
    variables.push_back({{"vertex", id}, {"name", seed.names()[i]}, {"value", seed.variable_string(id)}});
  }
  return {{"quiver", to_json(seed.quiver())}, {"variables", std::move(variables)}};
}

// Instances -------------------------------------------------------------------

Instance build_instance(const CartanMatrix& cartan, const WeylWord& u, const WeylWord& v,
                        const std::vector<int>& interleave, FrozenArrows frozen) {
  ShuffledWord word = build_shuffle(cartan, u, v, interleave);
  BfzQuiver bfz = build_bfz_quiver(cartan, word, frozen);
  CylinderLayout lay = layout(bfz, branch_decompose(dynkin_graph(cartan)));
  return Instance{cartan, std::move(word), std::move(bfz.quiver), std::move(bfz.kinds), std::move(lay)};
}

Json to_json(const Instance& instance) {
  if (!instance.cartan && !instance.word && !instance.layout) return to_json(instance.quiver);
  Json j = Json::object();
  if (instance.cartan) {
    if (!instance.cartan->name().empty())
      j["cartan"] = instance.cartan->name();
    else
      j["cartan"] = instance.cartan->entries();
  }
  if (instance.word) j["word"] = {{"shuffled", instance.word->shuffled()}};
  if (instance.word && !instance.kinds.empty()) {
    j["quiver"] = to_json(BfzQuiver{instance.quiver, *instance.word, instance.kinds});
  } else {
    j["quiver"] = to_json(instance.quiver);
  }
  if (instance.layout) j["layout"] = to_json(*instance.layout);
  return j;
}

Instance instance_from_json(const Json& j) {
  return guarded("instance", [&] {
    if (!j.is_object()) throw ValidationError("instance must be a JSON object");
    if (!j.contains("quiver")) return Instance{std::nullopt, std::nullopt, quiver_from_json(j), {}, std::nullopt};
    Instance out;
    if (j.contains("cartan")) {
      const Json& c = j.at("cartan");
      out.cartan = c.is_string() ? CartanMatrix::named(c.get<std::string>()) : parse_cartan(c.dump());
    }
    out.quiver = quiver_from_json(j.at("quiver"));
    if (j.contains("word")) {
      if (!out.cartan) throw ValidationError("\"word\" needs \"cartan\"");
      out.word = ShuffledWord(out.cartan->rank(), int_list(field(j.at("word"), "shuffled"), "word"));
      const Json& arrows = j.at("quiver").at("arrows");
      for (const Json& a : arrows) {
        if (!a.contains("kind")) continue;
        const std::string kind = a.at("kind").get<std::string>();
        if (kind != "horizontal" && kind != "inclined") throw ValidationError("bad arrow kind \"" + kind + "\"");
        const int id = a.at("id").get<int>();
        if (out.quiver.has_arrow(id))
          out.kinds[id] = kind == "horizontal" ? ArrowKind::horizontal : ArrowKind::inclined;
      }
      if (out.kinds.size() != out.quiver.arrows().size()) out.kinds.clear();
    }
    if (j.contains("layout")) {
      if (!out.cartan) throw ValidationError("\"layout\" needs \"cartan\"");
      out.layout = layout_from_json(j.at("layout"), *out.cartan);
      if (!out.layout->covers(out.quiver)) throw ValidationError("layout does not place every vertex");
    }
    return out;
  });
}

std::vector<Face> instance_faces(const Instance& instance, const Potential* potential) {
  if (instance.layout) return enumerate_faces(instance.quiver, *instance.layout);
  if (potential) return faces_from_potential(instance.quiver, *potential);
  return {};
}

// Potentials ------------------------------------------------------------------

Json to_json(const Potential& s) {
  Json terms = Json::array();
  for (const auto& [path, coef] : s.element().terms()) terms.push_back({{"coef", coef.get_str()}, {"path", path}});
  return {{"terms", std::move(terms)}};
}

Potential potential_from_json(const Json& j, const Quiver& quiver) {
  return guarded("potential", [&] {
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw ValidationError("\"terms\" must be an array");
    PathElement element;
    for (const Json& t : terms) {
      const Path path = int_list(field(t, "path"), "path");
      for (int a : path)
        if (!quiver.has_arrow(a)) throw ValidationError("potential uses unknown arrow " + std::to_string(a));
      element.add(path, t.contains("coef") ? parse_rational(t.at("coef")) : Rational(1));
    }
    return Potential(quiver, std::move(element));
  });
}

// Reports ---------------------------------------------------------------------

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::clockwise: return "cw";
    case Orientation::anticlockwise: return "ccw";
    case Orientation::none: return "none";
  }
  return "none";
}

Json to_json(const Face& face) {
  return {{"arrows", face.arrows},
          {"sheet", face.sheet},
          {"edge", {face.edge.first, face.edge.second}},
          {"orientation", to_string(face.orientation)}};
}

Json to_json(const std::vector<Face>& faces) {
  Json out = Json::array();
  for (const Face& f : faces) out.push_back(to_json(f));
  return out;
}

namespace {

Json projection_json(const ProjectionReport& r) { return {{"pass", r.pass}, {"violations", r.violations}}; }

}  // namespace

Json to_json(const DimerReport& report) {
  Json crossings = Json::array();
  for (const auto& [a, b] : report.planarity.crossings) crossings.push_back({a, b});
  return {{"pass", report.pass()},
          {"arrow_projection", projection_json(report.arrow_projection)},
          {"face_projection", projection_json(report.face_projection)},
          {"face_orientation", projection_json(report.face_orientation)},
          {"planarity",
           {{"pass", report.planarity.pass},
            {"crossings", std::move(crossings)},
            {"through_vertex", report.planarity.through_vertex}}},
          {"faces", to_json(report.faces)}};
}

Json to_json(const Expansion& expansion) {
  Json out = Json::array();
  for (const auto& [t, coef] : expansion)
    out.push_back({{"left", t.left}, {"arrow", t.arrow}, {"right", t.right}, {"coef", coef.get_str()}});
  return out;
}

Json to_json(const Certificate& certificate) {
  Json steps = Json::array();
  for (const CertificateStep& step : certificate.steps) {
    Json js{{"kind", to_string(step.kind)}};
    if (step.edge) js["edge"] = *step.edge;
    if (!step.face.empty()) js["face"] = step.face;
    if (!step.others.empty()) js["others"] = step.others;
    if (!step.witness.empty()) js["witness"] = to_json(step.witness);
    steps.push_back(std::move(js));
  }
  return {{"cycle", certificate.cycle}, {"steps", std::move(steps)}, {"verified", certificate.verified}};
}

Json verdict_json(const RigidityReport& report) {
  Json failures = Json::array();
  for (const CycleResult& c : report.cycles) {
    if (c.certified) continue;
    failures.push_back({{"cycle", c.cycle}, {"oracle", to_string(c.oracle)}, {"multi_sheet", c.multi_sheet}});
  }
  return {{"rigid", report.rigid},
          {"cycles_total", report.cycles.size()},
          {"certified", report.certified},
          {"oracle_only", report.oracle_only},
          {"failures", std::move(failures)}};
}

// Drawings --------------------------------------------------------------------

std::string to_dot(const Quiver& quiver) {
  std::ostringstream out;
  out << "digraph quiver {\n";
  for (const Vertex& v : quiver.vertices()) {
    out << "  \"" << v.id << "\" [label=\"" << v.label.value_or(std::to_string(v.id)) << "\"";
    if (v.frozen) out << ", shape=box";
    out << "];\n";
  }
  for (const Arrow& a : quiver.arrows())
    out << "  \"" << a.src << "\" -> \"" << a.tgt << "\" [id=\"a" << a.id << "\"];\n";
  out << "}\n";
  return out.str();
}

namespace {

std::string node_name(int sheet, int vertex) {
  return "s" + std::to_string(sheet) + "v" + (vertex < 0 ? "m" + std::to_string(-vertex) : std::to_string(vertex));
}

void tikz_vertex(std::ostringstream& out, const Vertex& v, const std::string& name, double x, double y) {
  out << "  \\node[" << (v.frozen ? "frozen" : "mutable") << "] (" << name << ") at (" << x << "," << y
      << ") {$" << v.label.value_or(std::to_string(v.id)) << "$};\n";
}

}  // namespace

std::string to_tikz(const Instance& instance) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "\\begin{tikzpicture}[>=stealth,\n"
         "  mutable/.style={circle,draw,inner sep=1pt},\n"
         "  frozen/.style={rectangle,draw,inner sep=2pt}]\n";
  const Quiver& q = instance.quiver;
  if (!instance.layout) {
    const double n = static_cast<double>(q.vertices().size());
    for (std::size_t i = 0; i < q.vertices().size(); ++i) {
      const double t = 2 * std::numbers::pi * static_cast<double>(i) / std::max(n, 1.0);
      tikz_vertex(out, q.vertices()[i], node_name(0, q.vertices()[i].id), 2 * std::cos(t), 2 * std::sin(t));
    }
    for (const Arrow& a : q.arrows()) out << "  \\draw[->] (" << node_name(0, a.src) << ") -- (" << node_name(0, a.tgt) << ");\n";
    out << "\\end{tikzpicture}\n";
    return out.str();
  }

  const CylinderLayout& lay = *instance.layout;
  const BranchDecomposition& br = lay.branches();
  int top = 0;
  for (const auto& [v, p] : lay.placement()) top = std::max(top, p.height);
  const double step = 1.5;
  double offset = 0;
  for (std::size_t s = 0; s < br.sheet_count(); ++s) {
    const int sheet = static_cast<int>(s);
    out << "  % sheet " << s << "\n";
    for (std::size_t x = 0; x < br.branches[s].size(); ++x) {
      const double px = offset + step * static_cast<double>(x);
      out << "  \\draw[gray] (" << px << ",-0.5) -- (" << px << "," << top + 0.5 << ");\n";
      out << "  \\node[below] at (" << px << ",-0.5) {$" << br.branches[s][x] << "$};\n";
    }
    for (const Vertex& v : q.vertices()) {
      if (br.x_in_sheet(s, lay.at(v.id).string) < 0) continue;
      const auto [x, y] = sheet_point(lay, sheet, v.id);
      tikz_vertex(out, v, node_name(sheet, v.id), offset + step * x, y);
    }
    for (int id : sheet_arrows(q, lay, sheet)) {
      const Arrow& a = q.arrow(id);
      out << "  \\draw[->] (" << node_name(sheet, a.src) << ") -- (" << node_name(sheet, a.tgt) << ");\n";
    }
    offset += step * static_cast<double>(br.branches[s].size()) + 1.5;
  }
  out << "\\end{tikzpicture}\n";
  return out.str();
}

}  // namespace dimerbfz
