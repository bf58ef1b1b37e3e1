#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pn2sc/chart.hpp"
#include "pn2sc/engine.hpp"
#include "pn2sc/net.hpp"

namespace pn2sc::io {

enum class Format { xml, json };

std::optional<Format> format_from_name(std::string_view name);
/// JSON when the first non-blank byte is '{' or '[', XML otherwise.
Format sniff_format(std::string_view bytes);

// Readers throw SyntaxError for malformed documents and SemanticError for
// well-formed documents that describe an invalid model.

PetriNet parse_net(std::string_view bytes, Format format);
StateChart parse_chart(std::string_view bytes, Format format);
engine::TraceDocument parse_trace(std::string_view bytes, Format format);

// Writers are pure: equal models give identical bytes. Output is UTF-8 with
// LF line endings and two-space indentation.

std::string write_net(const PetriNet& net, Format format);
/// Refuses (ValidationError) charts that fail validate_chart.
std::string write_chart(const StateChart& chart, Format format);
std::string write_trace(const engine::TraceDocument& trace,
                        Format format = Format::json);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace pn2sc::io
