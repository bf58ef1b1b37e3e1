#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include "json.hpp"

namespace pn2sc::io::detail {

using Tree = boost::property_tree::ptree;
using Json = nlohmann::ordered_json;

/// Parses an XML document; SyntaxError carries the line number.
Tree load_xml(std::string_view bytes);
/// Returns the single top-level element, which must be named `root`.
const Tree& root_element(const Tree& doc, const std::string& root);

/// Attribute lookup; empty optional when missing.
std::optional<std::string> attribute(const Tree& element, const std::string& key);
std::string required_attribute(const Tree& element, const std::string& tag,
                               const std::string& key);
bool is_markup(const std::string& key);

Json load_json(std::string_view bytes);

std::vector<std::string> split_ids(std::string_view list);
std::string join_ids(const std::vector<std::string>& ids);

std::string escape_xml(std::string_view text);

}  // namespace pn2sc::io::detail
