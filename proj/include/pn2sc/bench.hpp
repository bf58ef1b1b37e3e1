#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pn2sc/io.hpp"

namespace pn2sc {

struct BenchOptions {
  std::vector<std::size_t> sizes;
  std::size_t repetitions = 5;
  std::uint64_t seed = 0;
  std::size_t max_branch = 4;
  /// Drop the first repetition from the averages (needs repetitions >= 2).
  bool discard_first = false;
  /// Run different sizes concurrently. Repetitions of one size stay serial.
  bool parallel_cases = false;
  io::Format format = io::Format::xml;
  /// Scratch directory; a fresh one under the system temp dir when empty.
  std::filesystem::path work_dir;
};

/// One row of the timing table, averaged over the counted repetitions.
struct BenchRow {
  std::string name;
  std::size_t places = 0;
  double reading_ms = 0;
  double transformation_ms = 0;
  double writing_ms = 0;
  bool fully_reduced = false;
  /// Set when the row failed; timings are then meaningless.
  std::optional<std::string> error;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::size_t repetitions = 0;
};

/// For each size: generate the net once and store it, then per repetition
/// time parsing the file, transforming with a fresh rule set and context, and
/// writing the chart file.
BenchReport bench(const BenchOptions& options);

/// Aligned table with the columns Test case / Reading input / Transformation
/// / Writing output, values like "12.96ms".
std::string format_table(const BenchReport& report);
/// `case,reading_ms,transformation_ms,writing_ms`, two decimals.
std::string format_csv(const BenchReport& report);

}  // namespace pn2sc
