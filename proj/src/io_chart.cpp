#include <unordered_map>

#include "io_detail.hpp"
#include "pn2sc/io.hpp"

namespace pn2sc::io {

namespace {

using detail::Json;
using detail::Tree;

// Builds a chart from either format. Structural problems that the typed
// attach API cannot express (alternation) are rejected here; everything else
// is left for validate_chart.
class ChartBuilder {
 public:
  explicit ChartBuilder(std::string name) : chart_(std::move(name)) {}

  AndState& make_and(const std::string& id) { return chart_.new_and_with_id(id); }
  OrState& make_or(const std::string& id) { return chart_.new_or_with_id(id); }
  Basic& make_basic(const std::string& id, const std::string& place) {
    Basic& b = chart_.new_basic_with_id(id, place);
    basics_.emplace(id, &b);
    return b;
  }

  void attach(State& parent, State& child) {
    if (parent.kind() == StateKind::and_state) {
      if (child.kind() != StateKind::or_state) {
        throw SemanticError(std::string("alternation error: AND state '") +
                                parent.id() + "' directly contains " +
                                to_string(child.kind()) + " state '" + child.id() +
                                "'",
                            child.id());
      }
      chart_.attach(static_cast<AndState&>(parent), static_cast<OrState&>(child));
    } else if (parent.kind() == StateKind::or_state) {
      if (child.kind() == StateKind::basic) {
        chart_.attach(static_cast<OrState&>(parent), static_cast<Basic&>(child));
      } else if (child.kind() == StateKind::and_state) {
        chart_.attach(static_cast<OrState&>(parent), static_cast<AndState&>(child));
      } else {
        throw SemanticError("alternation error: OR state '" + parent.id() +
                                "' directly contains OR state '" + child.id() + "'",
                            child.id());
      }
    } else {
      throw SemanticError("basic state '" + parent.id() + "' cannot have children",
                          parent.id());
    }
  }

  void set_top(State& top) {
    if (top.kind() != StateKind::and_state) {
      throw SemanticError("topstate '" + top.id() + "' must be an AND state",
                          top.id());
    }
    chart_.set_topstate(static_cast<AndState&>(top));
  }

  void add_hyperedge(const std::string& id, const std::string& transition,
                     const std::vector<std::string>& src,
                     const std::vector<std::string>& tgt) {
    HyperEdge& edge = chart_.new_hyperedge_with_id(id, transition);
    for (const auto& s : src) edge.add_source(basic(id, s));
    for (const auto& t : tgt) edge.add_target(basic(id, t));
  }

  StateChart finish() {
    if (!chart_.topstate()) {
      throw SemanticError("chart '" + chart_.name() + "' has no topstate",
                          chart_.name());
    }
    return std::move(chart_);
  }

 private:
  Basic& basic(const std::string& edge, const std::string& id) {
    auto it = basics_.find(id);
    if (it == basics_.end()) {
      throw SemanticError("hyperedge '" + edge + "' references '" + id +
                              "', which is not a basic state",
                          id);
    }
    return *it->second;
  }

  StateChart chart_;
  std::unordered_map<std::string, Basic*> basics_;
};

State& build_xml_state(ChartBuilder& builder, const std::string& tag,
                       const Tree& element) {
  const std::string id = detail::required_attribute(element, tag, "id");
  State* node = nullptr;
  if (tag == "and") {
    node = &builder.make_and(id);
  } else if (tag == "or") {
    node = &builder.make_or(id);
  } else if (tag == "basic") {
    node = &builder.make_basic(id, detail::required_attribute(element, tag, "place"));
  } else {
    throw SemanticError("unexpected element <" + tag + "> in chart", tag);
  }
  for (const auto& [child_tag, child] : element) {
    if (detail::is_markup(child_tag)) continue;
    builder.attach(*node, build_xml_state(builder, child_tag, child));
  }
  return *node;
}

StateChart parse_chart_xml(std::string_view bytes) {
  Tree doc = detail::load_xml(bytes);
  const Tree& root = detail::root_element(doc, "statechart");
  ChartBuilder builder(detail::attribute(root, "name").value_or(""));
  bool have_top = false;
  for (const auto& [tag, element] : root) {
    if (detail::is_markup(tag)) continue;
    if (tag == "hyperedge") {
      builder.add_hyperedge(
          detail::required_attribute(element, tag, "id"),
          detail::required_attribute(element, tag, "transition"),
          detail::split_ids(detail::required_attribute(element, tag, "src")),
          detail::split_ids(detail::required_attribute(element, tag, "tgt")));
      continue;
    }
    if (have_top) {
      throw SemanticError("statechart has more than one top-level state", tag);
    }
    builder.set_top(build_xml_state(builder, tag, element));
    have_top = true;
  }
  return builder.finish();
}

std::string json_string(const Json& object, const char* key, const char* what) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_string()) {
    throw SemanticError(std::string(what) + " needs a string field '" + key + "'",
                        what);
  }
  return it->get<std::string>();
}

std::vector<std::string> json_ids(const Json& object, const char* key,
                                  const std::string& owner) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_array()) {
    throw SemanticError("'" + owner + "' needs an array field '" + key + "'", owner);
  }
  std::vector<std::string> out;
  for (const auto& item : *it) {
    if (!item.is_string()) {
      throw SemanticError("'" + owner + "' field '" + key + "' must hold strings",
                          owner);
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

State& build_json_state(ChartBuilder& builder, const Json& node) {
  if (!node.is_object()) throw SemanticError("chart nodes must be objects", "state");
  const std::string kind = json_string(node, "kind", "state");
  const std::string id = json_string(node, "id", "state");
  State* state = nullptr;
  if (kind == "and") {
    state = &builder.make_and(id);
  } else if (kind == "or") {
    state = &builder.make_or(id);
  } else if (kind == "basic") {
    state = &builder.make_basic(id, json_string(node, "place", "basic"));
  } else {
    throw SemanticError("unknown state kind '" + kind + "'", id);
  }
  if (auto it = node.find("children"); it != node.end()) {
    if (!it->is_array()) throw SemanticError("'children' must be an array", id);
    for (const auto& child : *it) {
      builder.attach(*state, build_json_state(builder, child));
    }
  }
  return *state;
}

StateChart parse_chart_json(std::string_view bytes) {
  Json doc = detail::load_json(bytes);
  if (!doc.is_object()) {
    throw SemanticError("chart document must be an object", "statechart");
  }
  ChartBuilder builder(doc.contains("name") && doc["name"].is_string()
                           ? doc["name"].get<std::string>()
                           : std::string{});
  auto top = doc.find("topstate");
  if (top == doc.end()) throw SemanticError("chart has no topstate", "statechart");
  builder.set_top(build_json_state(builder, *top));
  if (auto edges = doc.find("hyperedges"); edges != doc.end()) {
    if (!edges->is_array()) {
      throw SemanticError("'hyperedges' must be an array", "statechart");
    }
    for (const auto& edge : *edges) {
      if (!edge.is_object()) {
        throw SemanticError("hyperedge entries must be objects", "hyperedge");
      }
      const std::string id = json_string(edge, "id", "hyperedge");
      builder.add_hyperedge(id, json_string(edge, "transition", "hyperedge"),
                            json_ids(edge, "src", id), json_ids(edge, "tgt", id));
    }
  }
  return builder.finish();
}

std::vector<std::string> endpoint_ids(const std::vector<Basic*>& endpoints) {
  std::vector<std::string> out;
  out.reserve(endpoints.size());
  for (const auto* b : endpoints) out.push_back(b->id());
  return out;
}

void write_xml_state(std::string& out, const State& node, int depth) {
  using detail::escape_xml;
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  if (node.kind() == StateKind::basic) {
    out += indent + "<basic id=\"" + escape_xml(node.id()) + "\" place=\"" +
           escape_xml(static_cast<const Basic&>(node).origin_place()) + "\"/>\n";
    return;
  }
  const char* tag = to_string(node.kind());
  out += indent + "<" + tag + " id=\"" + escape_xml(node.id()) + "\">\n";
  if (node.kind() == StateKind::or_state) {
    for (const auto& child : static_cast<const OrState&>(node).children()) {
      write_xml_state(out, child, depth + 1);
    }
  } else {
    for (const auto& child : static_cast<const AndState&>(node).children()) {
      write_xml_state(out, child, depth + 1);
    }
  }
  out += indent + "</" + tag + ">\n";
}

std::string write_chart_xml(const StateChart& chart) {
  using detail::escape_xml;
  std::string out = "<statechart name=\"" + escape_xml(chart.name()) + "\">\n";
  write_xml_state(out, *chart.topstate(), 1);
  for (const auto& edge : chart.hyperedges()) {
    out += "  <hyperedge id=\"" + escape_xml(edge.id()) + "\" transition=\"" +
           escape_xml(edge.origin_transition()) + "\" src=\"" +
           escape_xml(detail::join_ids(endpoint_ids(edge.sources()))) +
           "\" tgt=\"" + escape_xml(detail::join_ids(endpoint_ids(edge.targets()))) +
           "\"/>\n";
  }
  out += "</statechart>\n";
  return out;
}

Json json_state(const State& node) {
  Json out;
  out["kind"] = to_string(node.kind());
  out["id"] = node.id();
  if (node.kind() == StateKind::basic) {
    out["place"] = static_cast<const Basic&>(node).origin_place();
    return out;
  }
  Json children = Json::array();
  if (node.kind() == StateKind::or_state) {
    for (const auto& c : static_cast<const OrState&>(node).children()) {
      children.push_back(json_state(c));
    }
  } else {
    for (const auto& c : static_cast<const AndState&>(node).children()) {
      children.push_back(json_state(c));
    }
  }
  out["children"] = std::move(children);
  return out;
}

std::string write_chart_json(const StateChart& chart) {
  Json doc;
  doc["name"] = chart.name();
  doc["topstate"] = json_state(*chart.topstate());
  Json edges = Json::array();
  for (const auto& edge : chart.hyperedges()) {
    Json entry;
    entry["id"] = edge.id();
    entry["transition"] = edge.origin_transition();
    entry["src"] = endpoint_ids(edge.sources());
    entry["tgt"] = endpoint_ids(edge.targets());
    edges.push_back(std::move(entry));
  }
  doc["hyperedges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

}  // namespace

StateChart parse_chart(std::string_view bytes, Format format) {
  return format == Format::xml ? parse_chart_xml(bytes) : parse_chart_json(bytes);
}

std::string write_chart(const StateChart& chart, Format format) {
  auto violations = validate_chart(chart);
  if (!violations.empty()) {
    throw ValidationError("refusing to write invalid chart '" + chart.name() +
                          "':\n" + describe(violations));
  }
  return format == Format::xml ? write_chart_xml(chart) : write_chart_json(chart);
}

}  // namespace pn2sc::io
