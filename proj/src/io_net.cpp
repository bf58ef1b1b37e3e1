#include <unordered_set>

#include "io_detail.hpp"
#include "pn2sc/io.hpp"

namespace pn2sc::io {

namespace {

using detail::Json;
using detail::Tree;

struct RawTransition {
  std::string id;
  std::string name;
  std::vector<std::string> src;
  std::vector<std::string> tgt;
};

// Shared semantic checks for both formats. Places are declared before any
// transition is resolved, so element order in the document does not matter.
PetriNet build_net(std::string name,
                   const std::vector<std::pair<std::string, std::string>>& places,
                   const std::vector<RawTransition>& transitions) {
  PetriNet net(std::move(name));
  for (const auto& [id, place_name] : places) {
    if (id.empty()) throw SemanticError("place with empty id", "place");
    if (net.id_in_use(id)) throw SemanticError("duplicate id '" + id + "'", id);
    net.add_place(id, place_name);
  }
  for (const auto& t : transitions) {
    if (t.id.empty()) throw SemanticError("transition with empty id", "transition");
    if (net.id_in_use(t.id)) {
      throw SemanticError("duplicate id '" + t.id + "'", t.id);
    }
    auto resolve = [&](const std::vector<std::string>& ids, const char* role) {
      if (ids.empty()) {
        throw SemanticError("transition '" + t.id + "' has an empty " + role, t.id);
      }
      std::unordered_set<std::string> seen;
      std::vector<Place*> out;
      for (const auto& pid : ids) {
        Place* p = net.find_place(pid);
        if (!p) {
          throw SemanticError("transition '" + t.id + "' " + role +
                                  " references undeclared place '" + pid + "'",
                              pid);
        }
        if (!seen.insert(pid).second) {
          throw SemanticError("transition '" + t.id + "' lists place '" + pid +
                                  "' twice in its " + role,
                              t.id);
        }
        out.push_back(p);
      }
      return out;
    };
    auto pre = resolve(t.src, "src");
    auto post = resolve(t.tgt, "tgt");
    net.add_transition(t.id, pre, post, t.name);
  }
  if (net.place_count() == 0) {
    throw SemanticError("net '" + net.name() + "' declares no places", net.name());
  }
  return net;
}

PetriNet parse_net_xml(std::string_view bytes) {
  Tree doc = detail::load_xml(bytes);
  const Tree& root = detail::root_element(doc, "petrinet");
  std::string name = detail::attribute(root, "name").value_or("");

  std::vector<std::pair<std::string, std::string>> places;
  std::vector<RawTransition> transitions;
  for (const auto& [tag, element] : root) {
    if (detail::is_markup(tag)) continue;
    if (tag == "place") {
      places.emplace_back(detail::required_attribute(element, tag, "id"),
                          detail::attribute(element, "name").value_or(""));
    } else if (tag == "transition") {
      RawTransition t;
      t.id = detail::required_attribute(element, tag, "id");
      t.name = detail::attribute(element, "name").value_or("");
      t.src = detail::split_ids(detail::required_attribute(element, tag, "src"));
      t.tgt = detail::split_ids(detail::required_attribute(element, tag, "tgt"));
      transitions.push_back(std::move(t));
    } else {
      throw SemanticError("unexpected element <" + tag + "> in <petrinet>", tag);
    }
  }
  return build_net(std::move(name), places, transitions);
}

std::string string_field(const Json& object, const char* key, const char* what,
                         bool required) {
  auto it = object.find(key);
  if (it == object.end()) {
    if (required) {
      throw SemanticError(std::string(what) + " is missing field '" + key + "'", what);
    }
    return {};
  }
  if (!it->is_string()) {
    throw SemanticError(std::string(what) + " field '" + key + "' must be a string",
                        what);
  }
  return it->get<std::string>();
}

const Json& array_field(const Json& object, const char* key, const std::string& what) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_array()) {
    throw SemanticError(what + " needs an array field '" + key + "'", what);
  }
  return *it;
}

std::vector<std::string> id_list(const Json& object, const char* key,
                                 const std::string& owner) {
  std::vector<std::string> out;
  for (const auto& item : array_field(object, key, owner)) {
    if (!item.is_string()) {
      throw SemanticError("'" + owner + "' field '" + key + "' must hold strings",
                          owner);
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

PetriNet parse_net_json(std::string_view bytes) {
  Json doc = detail::load_json(bytes);
  if (!doc.is_object()) throw SemanticError("net document must be an object", "net");
  std::string name = string_field(doc, "name", "net", false);

  std::vector<std::pair<std::string, std::string>> places;
  for (const auto& p : array_field(doc, "places", "net")) {
    if (!p.is_object()) throw SemanticError("place entries must be objects", "place");
    places.emplace_back(string_field(p, "id", "place", true),
                        string_field(p, "name", "place", false));
  }
  std::vector<RawTransition> transitions;
  if (doc.contains("transitions")) {
    for (const auto& t : array_field(doc, "transitions", "net")) {
      if (!t.is_object()) {
        throw SemanticError("transition entries must be objects", "transition");
      }
      RawTransition raw;
      raw.id = string_field(t, "id", "transition", true);
      raw.name = string_field(t, "name", "transition", false);
      raw.src = id_list(t, "src", raw.id);
      raw.tgt = id_list(t, "tgt", raw.id);
      transitions.push_back(std::move(raw));
    }
  }
  return build_net(std::move(name), places, transitions);
}

std::vector<std::string> ordered_ids(const NodeSet<Place>& set) {
  std::vector<std::string> out;
  for (auto* p : in_net_order(set)) out.push_back(p->id());
  return out;
}

std::string write_net_xml(const PetriNet& net) {
  using detail::escape_xml;
  std::string out = "<petrinet name=\"" + escape_xml(net.name()) + "\">\n";
  for (const auto& p : net.places()) {
    out += "  <place id=\"" + escape_xml(p.id()) + "\"";
    if (!p.name().empty()) out += " name=\"" + escape_xml(p.name()) + "\"";
    out += "/>\n";
  }
  for (const auto& t : net.transitions()) {
    out += "  <transition id=\"" + escape_xml(t.id()) + "\" src=\"" +
           escape_xml(detail::join_ids(ordered_ids(t.preset()))) + "\" tgt=\"" +
           escape_xml(detail::join_ids(ordered_ids(t.postset()))) + "\"";
    if (!t.name().empty()) out += " name=\"" + escape_xml(t.name()) + "\"";
    out += "/>\n";
  }
  out += "</petrinet>\n";
  return out;
}

std::string write_net_json(const PetriNet& net) {
  Json doc;
  doc["name"] = net.name();
  Json places = Json::array();
  for (const auto& p : net.places()) {
    Json entry;
    entry["id"] = p.id();
    if (!p.name().empty()) entry["name"] = p.name();
    places.push_back(std::move(entry));
  }
  Json transitions = Json::array();
  for (const auto& t : net.transitions()) {
    Json entry;
    entry["id"] = t.id();
    entry["src"] = ordered_ids(t.preset());
    entry["tgt"] = ordered_ids(t.postset());
    if (!t.name().empty()) entry["name"] = t.name();
    transitions.push_back(std::move(entry));
  }
  doc["places"] = std::move(places);
  doc["transitions"] = std::move(transitions);
  return doc.dump(2) + "\n";
}

}  // namespace

PetriNet parse_net(std::string_view bytes, Format format) {
  return format == Format::xml ? parse_net_xml(bytes) : parse_net_json(bytes);
}

std::string write_net(const PetriNet& net, Format format) {
  return format == Format::xml ? write_net_xml(net) : write_net_json(net);
}

}  // namespace pn2sc::io
