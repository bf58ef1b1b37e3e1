#include "pn2sc/bench.hpp"

#include <chrono>
#include <cstdio>
#include <future>
#include <random>

#include "pn2sc/generator.hpp"
#include "pn2sc/pipeline.hpp"

namespace pn2sc {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration<double, std::milli>(to - from).count();
}

std::string two_decimals(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

BenchRow run_case(const BenchOptions& options, std::size_t index,
                  const std::filesystem::path& dir) {
  const std::size_t size = options.sizes[index];
  BenchRow row;
  row.name = "sp" + std::to_string(size);
  row.places = size;
  try {
    const char* ext = options.format == io::Format::xml ? ".xml" : ".json";
    const std::string stem = std::to_string(index) + "-" + row.name;
    const auto input_path = dir / (stem + "-net" + ext);
    const auto output_path = dir / (stem + "-chart" + ext);

    PetriNet generated = generate_sp({size, options.seed, options.max_branch});
    io::write_file(input_path, io::write_net(generated, options.format));

    std::size_t counted = 0;
    for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
      const auto t0 = Clock::now();
      PetriNet net = io::parse_net(io::read_file(input_path), options.format);
      const auto t1 = Clock::now();
      TransformResult result = transform(net);
      const auto t2 = Clock::now();
      io::write_file(output_path, io::write_chart(result.chart, options.format));
      const auto t3 = Clock::now();

      row.fully_reduced = result.report.fully_reduced;
      if (options.discard_first && options.repetitions >= 2 && rep == 0) continue;
      row.reading_ms += elapsed_ms(t0, t1);
      row.transformation_ms += elapsed_ms(t1, t2);
      row.writing_ms += elapsed_ms(t2, t3);
      ++counted;
    }
    row.reading_ms /= static_cast<double>(counted);
    row.transformation_ms /= static_cast<double>(counted);
    row.writing_ms /= static_cast<double>(counted);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::filesystem::path make_work_dir() {
  std::random_device entropy;
  auto base = std::filesystem::temp_directory_path();
  for (;;) {
    auto dir = base / ("pn2sc-bench-" + std::to_string(entropy()));
    if (std::filesystem::create_directory(dir)) return dir;
  }
}

}  // namespace

BenchReport bench(const BenchOptions& options) {
  if (options.sizes.empty()) throw PreconditionError("bench needs at least one size");
  if (options.repetitions < 1) {
    throw PreconditionError("bench needs at least one repetition");
  }

  const bool own_dir = options.work_dir.empty();
  const auto dir = own_dir ? make_work_dir() : options.work_dir;
  if (!own_dir) std::filesystem::create_directories(dir);

  BenchReport report;
  report.repetitions = options.repetitions;
  if (options.parallel_cases) {
    std::vector<std::future<BenchRow>> pending;
    for (std::size_t i = 0; i < options.sizes.size(); ++i) {
      pending.push_back(std::async(std::launch::async, run_case, std::cref(options),
                                   i, std::cref(dir)));
    }
    for (auto& f : pending) report.rows.push_back(f.get());
  } else {
    for (std::size_t i = 0; i < options.sizes.size(); ++i) {
      report.rows.push_back(run_case(options, i, dir));
    }
  }

  if (own_dir) {
    std::error_code ignored;
    std::filesystem::remove_all(dir, ignored);
  }
  return report;
}

std::string format_table(const BenchReport& report) {
  const std::vector<std::string> header = {"Test case", "Reading input",
                                           "Transformation", "Writing output"};
  std::vector<std::vector<std::string>> cells{header};
  for (const auto& row : report.rows) {
    if (row.error) {
      cells.push_back({row.name, "error: " + *row.error, "", ""});
    } else {
      cells.push_back({row.name, two_decimals(row.reading_ms) + "ms",
                       two_decimals(row.transformation_ms) + "ms",
                       two_decimals(row.writing_ms) + "ms"});
    }
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      width[i] = std::max(width[i], line[i].size());
    }
  }
  std::string out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      std::string cell = cells[r][i];
      if (i + 1 < cells[r].size()) cell.resize(width[i], ' ');
      out += (i == 0 ? "" : " | ") + cell;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
    if (r == 0) {
      for (std::size_t i = 0; i < width.size(); ++i) {
        out += (i == 0 ? "" : "-+-") + std::string(width[i], '-');
      }
      out += '\n';
    }
  }
  return out;
}

std::string format_csv(const BenchReport& report) {
  std::string out = "case,reading_ms,transformation_ms,writing_ms\n";
  for (const auto& row : report.rows) {
    out += row.name;
    if (row.error) {
      out += ",,,\n";
      continue;
    }
    out += "," + two_decimals(row.reading_ms) + "," +
           two_decimals(row.transformation_ms) + "," + two_decimals(row.writing_ms) +
           "\n";
  }
  return out;
}

}  // namespace pn2sc
