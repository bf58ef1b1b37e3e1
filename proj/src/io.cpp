#include "pn2sc/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <boost/property_tree/xml_parser.hpp>

#include "io_detail.hpp"

namespace pn2sc::io {

namespace detail {

Tree load_xml(std::string_view bytes) {
  std::istringstream in{std::string(bytes)};
  Tree doc;
  try {
    boost::property_tree::read_xml(in, doc,
                                   boost::property_tree::xml_parser::no_comments);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw SyntaxError("XML syntax error at line " + std::to_string(e.line()) + ": " +
                          e.message(),
                      e.line());
  }
  return doc;
}

const Tree& root_element(const Tree& doc, const std::string& root) {
  const Tree* found = nullptr;
  for (const auto& [key, child] : doc) {
    if (is_markup(key)) continue;
    if (key != root || found) {
      throw SemanticError("expected a single <" + root + "> root element, found <" +
                              key + ">",
                          key);
    }
    found = &child;
  }
  if (!found) throw SemanticError("missing <" + root + "> root element", root);
  return *found;
}

std::optional<std::string> attribute(const Tree& element, const std::string& key) {
  auto attrs = element.get_child_optional("<xmlattr>");
  if (!attrs) return std::nullopt;
  auto value = attrs->get_optional<std::string>(key);
  if (!value) return std::nullopt;
  return *value;
}

std::string required_attribute(const Tree& element, const std::string& tag,
                               const std::string& key) {
  auto value = attribute(element, key);
  if (!value) {
    auto id = attribute(element, "id");
    throw SemanticError("<" + tag + (id ? " id=\"" + *id + "\"" : "") +
                            "> is missing attribute '" + key + "'",
                        id.value_or(tag));
  }
  return *value;
}

bool is_markup(const std::string& key) {
  return key == "<xmlattr>" || key == "<xmlcomment>" || key == "<xmltext>";
}

Json load_json(std::string_view bytes) {
  try {
    return Json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte, bytes.size());
    for (std::size_t i = 0; i + 1 < limit; ++i) {
      if (bytes[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SyntaxError("JSON syntax error at line " + std::to_string(line) +
                          ", column " + std::to_string(column) + ": " + e.what(),
                      line, column);
  }
}

std::vector<std::string> split_ids(std::string_view list) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < list.size()) {
    while (i < list.size() && std::isspace(static_cast<unsigned char>(list[i]))) ++i;
    std::size_t start = i;
    while (i < list.size() && !std::isspace(static_cast<unsigned char>(list[i]))) ++i;
    if (i > start) out.emplace_back(list.substr(start, i - start));
  }
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ' ';
    out += id;
  }
  return out;
}

std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace detail

std::optional<Format> format_from_name(std::string_view name) {
  if (name == "xml") return Format::xml;
  if (name == "json") return Format::json;
  return std::nullopt;
}

Format sniff_format(std::string_view bytes) {
  for (char c : bytes) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return (c == '{' || c == '[') ? Format::json : Format::xml;
  }
  return Format::xml;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace pn2sc::io
