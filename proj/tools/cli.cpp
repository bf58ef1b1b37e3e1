#include "cli.hpp"

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "pn2sc/bench.hpp"
#include "pn2sc/generator.hpp"
#include "pn2sc/io.hpp"
#include "pn2sc/pipeline.hpp"

namespace pn2sc::cli {

namespace {

const std::map<std::string, io::Format> kFormats = {{"xml", io::Format::xml},
                                                    {"json", io::Format::json}};

struct TransformArgs {
  std::string input;
  std::string output;
  std::string trace;
  std::optional<io::Format> format;
  bool require_full = false;
  bool stats = false;
};

struct GenerateArgs {
  std::size_t places = 0;
  std::uint64_t seed = 0;
  std::size_t max_branch = 4;
  std::string out;
  io::Format format = io::Format::xml;
};

struct ValidateArgs {
  std::string net;
  std::string chart;
};

struct BenchArgs {
  std::vector<std::size_t> sizes;
  std::size_t reps = 5;
  std::uint64_t seed = 0;
  std::size_t max_branch = 4;
  std::string report = "table";
  bool discard_first = false;
  bool parallel_cases = false;
};

void print_violations(std::ostream& err, const std::vector<Violation>& violations) {
  err << describe(violations);
}

int run_transform(const TransformArgs& args, std::ostream& out, std::ostream& err) {
  const std::string bytes = io::read_file(args.input);
  const io::Format in_format = io::sniff_format(bytes);
  const io::Format out_format = args.format.value_or(in_format);

  PetriNet net = io::parse_net(bytes, in_format);
  TransformResult result = transform(net);
  io::write_file(args.output, io::write_chart(result.chart, out_format));
  if (!args.trace.empty()) io::write_file(args.trace, io::write_trace(result.trace));

  const auto& r = result.report;
  if (args.stats) {
    out << "and_applications: " << r.and_applications << '\n'
        << "or_applications: " << r.or_applications << '\n'
        << "remaining_places: " << r.remaining_places << '\n'
        << "remaining_transitions: " << r.remaining_transitions << '\n'
        << "fully_reduced: " << (r.fully_reduced ? "true" : "false") << '\n';
  }
  if (args.require_full && !r.fully_reduced) {
    err << "net '" << net.name() << "' is not fully reduced: "
        << r.remaining_places << " places and " << r.remaining_transitions
        << " transitions remain\n";
    return kNotFullyReduced;
  }
  return kOk;
}

int run_generate(const GenerateArgs& args, std::ostream&, std::ostream&) {
  PetriNet net = generate_sp({args.places, args.seed, args.max_branch});
  io::write_file(args.out, io::write_net(net, args.format));
  return kOk;
}

int run_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
  if (!args.net.empty()) {
    const std::string bytes = io::read_file(args.net);
    PetriNet net = io::parse_net(bytes, io::sniff_format(bytes));
    auto violations = check_net(net);
    print_violations(err, violations);
    if (has_errors(violations)) return kValidationFailure;
    out << args.net << ": ok (" << net.place_count() << " places, "
        << net.transition_count() << " transitions)\n";
    return kOk;
  }
  const std::string bytes = io::read_file(args.chart);
  StateChart chart = io::parse_chart(bytes, io::sniff_format(bytes));
  auto violations = validate_chart(chart);
  print_violations(err, violations);
  if (!violations.empty()) return kValidationFailure;
  out << args.chart << ": ok\n";
  return kOk;
}

int run_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  BenchOptions options;
  options.sizes = args.sizes;
  options.repetitions = args.reps;
  options.seed = args.seed;
  options.max_branch = args.max_branch;
  options.discard_first = args.discard_first;
  options.parallel_cases = args.parallel_cases;
  BenchReport report = bench(options);
  out << (args.report == "csv" ? format_csv(report) : format_table(report));
  bool failed = false;
  for (const auto& row : report.rows) {
    if (row.error) {
      err << row.name << ": " << *row.error << '\n';
      failed = true;
    }
  }
  return failed ? kParseError : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Petri net to statechart transformation"};
  app.name(args.empty() ? "pn2sc" : args.front());
  app.require_subcommand(1);

  TransformArgs transform_args;
  auto* transform_cmd = app.add_subcommand("transform", "Derive a statechart from a net");
  transform_cmd->add_option("--input", transform_args.input, "Net file (XML or JSON)")
      ->required();
  transform_cmd->add_option("--output", transform_args.output, "Chart file to write")
      ->required();
  transform_cmd->add_option("--trace", transform_args.trace, "Trace JSON file to write");
  transform_cmd->add_option("--format", transform_args.format, "Chart format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  transform_cmd->add_flag("--require-full-reduction", transform_args.require_full,
                          "Exit 3 unless the net reduces to a single place");
  transform_cmd->add_flag("--stats", transform_args.stats, "Print reduction counters");

  GenerateArgs generate_args;
  auto* generate_cmd =
      app.add_subcommand("generate", "Write a random series-parallel net");
  generate_cmd->add_option("--places", generate_args.places, "Place count")
      ->required()
      ->check(CLI::PositiveNumber);
  generate_cmd->add_option("--seed", generate_args.seed, "RNG seed")->required();
  generate_cmd->add_option("--out", generate_args.out, "Net file to write")->required();
  generate_cmd->add_option("--max-branch", generate_args.max_branch,
                           "Maximum parallel branches")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  generate_cmd->add_option("--format", generate_args.format, "Net format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  ValidateArgs validate_args;
  auto* validate_cmd = app.add_subcommand("validate", "Check a net or chart file");
  auto* net_opt = validate_cmd->add_option("--net", validate_args.net, "Net file");
  auto* chart_opt = validate_cmd->add_option("--chart", validate_args.chart, "Chart file");
  net_opt->excludes(chart_opt);
  validate_cmd->require_option(1);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Time reading, transformation, writing");
  bench_cmd->add_option("--sizes", bench_args.sizes, "Comma-separated place counts")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--reps", bench_args.reps, "Repetitions per size")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_args.seed, "Generator seed");
  bench_cmd->add_option("--max-branch", bench_args.max_branch,
                        "Maximum parallel branches")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  bench_cmd->add_option("--report", bench_args.report, "table or csv")
      ->check(CLI::IsMember({"table", "csv"}));
  bench_cmd->add_flag("--discard-first", bench_args.discard_first,
                      "Drop the first repetition from the averages");
  bench_cmd->add_flag("--parallel-cases", bench_args.parallel_cases,
                      "Run sizes concurrently");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    err << app.help();
    return kParseError;
  }

  try {
    if (*transform_cmd) return run_transform(transform_args, out, err);
    if (*generate_cmd) return run_generate(generate_args, out, err);
    if (*validate_cmd) return run_validate(validate_args, out, err);
    return run_bench(bench_args, out, err);
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << " [" << e.element() << "]\n";
    return kValidationFailure;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
}

}  // namespace pn2sc::cli
