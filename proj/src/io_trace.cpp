#include "io_detail.hpp"
#include "pn2sc/io.hpp"

namespace pn2sc::io {

engine::TraceDocument parse_trace(std::string_view bytes, Format format) {
  engine::TraceDocument doc;
  if (format == Format::xml) {
    detail::Tree tree = detail::load_xml(bytes);
    const detail::Tree& root = detail::root_element(tree, "trace");
    for (const auto& [tag, element] : root) {
      if (detail::is_markup(tag)) continue;
      if (tag != "entry") {
        throw SemanticError("unexpected element <" + tag + "> in <trace>", tag);
      }
      doc.entries.push_back({detail::required_attribute(element, tag, "rule"),
                             detail::required_attribute(element, tag, "input"),
                             detail::required_attribute(element, tag, "output")});
    }
    return doc;
  }

  detail::Json json = detail::load_json(bytes);
  if (!json.is_array()) throw SemanticError("trace document must be an array", "trace");
  for (const auto& entry : json) {
    auto field = [&](const char* key) {
      auto it = entry.is_object() ? entry.find(key) : entry.end();
      if (!entry.is_object() || it == entry.end() || !it->is_string()) {
        throw SemanticError(std::string("trace entry needs a string field '") + key +
                                "'",
                            "trace");
      }
      return it->get<std::string>();
    };
    doc.entries.push_back({field("rule"), field("input"), field("output")});
  }
  return doc;
}

std::string write_trace(const engine::TraceDocument& trace, Format format) {
  if (format == Format::xml) {
    using detail::escape_xml;
    std::string out = "<trace>\n";
    for (const auto& e : trace.entries) {
      out += "  <entry rule=\"" + escape_xml(e.rule) + "\" input=\"" +
             escape_xml(e.input) + "\" output=\"" + escape_xml(e.output) + "\"/>\n";
    }
    out += "</trace>\n";
    return out;
  }
  detail::Json doc = detail::Json::array();
  for (const auto& e : trace.entries) {
    detail::Json entry;
    entry["rule"] = e.rule;
    entry["input"] = e.input;
    entry["output"] = e.output;
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace pn2sc::io
