// Command-line front end: reads a JSON problem document (file or stdin),
// dispatches one subcommand, and writes a schema-versioned report.
//
// Exit codes: 0 for any definitive verdict (including "false"), 1 for
// malformed or inconsistent input, 2 for internal consistency failures.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewrank/io.hpp"

namespace {

using nlohmann::json;

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw skewrank::ParseError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json report_json(const std::string& command, const json& input,
                 const skewrank::CommandOptions& opt) {
  return skewrank::run_command(command, input, opt).body;
}

/// Runs the command over every document of a batch with up to `jobs`
/// workers. Documents are independent and the work is pure, so the reports
/// land in input order regardless of scheduling.
json run_batch(const std::string& command, const json& batch,
               const skewrank::CommandOptions& opt, unsigned jobs) {
  std::vector<json> out(batch.size());
  std::vector<std::string> errors(batch.size());
  std::vector<int> codes(batch.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= batch.size()) return;
      try {
        out[i] = report_json(command, batch.at(i), opt);
      } catch (const skewrank::InputError& e) {
        codes[i] = 1;
        errors[i] = e.what();
      } catch (const std::exception& e) {
        codes[i] = 2;
        errors[i] = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  json reports = json::array();
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (codes[i] != 0)
      reports.push_back(json{{"schema", skewrank::kSchemaVersion},
                             {"command", command},
                             {"error", errors[i]},
                             {"exit_code", codes[i]}});
    else
      reports.push_back(std::move(out[i]));
  }
  return reports;
}

void write_output(const json& doc, const std::string& out_path,
                  const std::string& format) {
  std::string text = format == "text" ? skewrank::render_text(doc)
                                      : doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out)
      throw skewrank::ParseError("cannot open output file '" + out_path + "'");
    out << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact classification of constant-rank-4 linear spaces of "
      "skew-symmetric matrices"};
  app.require_subcommand(1);

  std::string field = "q", type, out_path, format = "json", input_path = "-";
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"rank-check", "decide whether the space has constant rank 4"},
      {"classify-line", "classify a pencil as general or special"},
      {"classify-plane", "classify a plane into one of the four orbits"},
      {"classify-plane5", "reduce a 5x5 plane to the order-5 normal family"},
      {"special-locus", "compute the locus of special lines of a plane"},
      {"stabilizer", "compute the stabilizer Lie algebra and orbit dimension"},
      {"fingerprint", "kernel-bundle invariants (plane) or minimal indices (line)"},
      {"gen", "emit a problem document for a normal form or seeded conjugate"},
      {"verify-witness", "re-check the witness of an emitted classification report"},
      {"no-p3", "decide constant rank for a 4-generator space (always false)"},
  };
  for (const auto& [name, desc] : commands) {
    auto* sub = app.add_subcommand(name, desc);
    if (std::string(name) != "gen")
      sub->add_option("input", input_path, "input JSON file, or - for stdin");
    sub->add_option("--field", field, "coefficient field: q, qsqrt[:r], fp:<p>");
    sub->add_option("--seed", seed, "explicit RNG seed (never ambient time)");
    sub->add_option("--jobs", jobs, "parallel workers for batch (array) inputs")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    if (std::string(name) == "gen")
      sub->add_option("--type", type,
                      "pi_g, pi_t, pi_p, pi_5, pi_5x5, ell_g, or ell_s")
          ->required();
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  skewrank::CommandOptions opt;
  opt.field = field;
  opt.seed = seed;
  opt.type = type;

  try {
    json input;
    if (command != "gen") {
      const std::string bytes = read_all(input_path);
      try {
        input = json::parse(bytes);
      } catch (const json::parse_error& e) {
        throw skewrank::ParseError(std::string("input is not valid JSON: ") +
                                   e.what());
      }
    }
    if (input.is_array()) {
      json reports = run_batch(command, input, opt, jobs);
      write_output(reports, out_path, format);
      int worst = 0;
      for (const auto& r : reports)
        worst = std::max(worst, r.value("exit_code", 0));
      return worst;
    }
    skewrank::ReportDocument report =
        skewrank::run_command(command, input, opt);
    write_output(report.body, out_path, format);
    return report.exit_code;
  } catch (const skewrank::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
