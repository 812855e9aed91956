#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "jobs.hpp"

namespace {

// The --json argument is a path, "-" for stdin, or an inline object.
jobs::json load_spec(const std::string& arg) {
  if (arg.empty()) return jobs::json::object();
  std::string text;
  if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else if (arg.front() == '{') {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw jobs::UsageError("", "cannot open " + arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return jobs::json::parse(text);
  } catch (const jobs::json::parse_error& e) {
    throw jobs::UsageError("", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact p-adic checks for relative trace formula transfer"};
  app.set_version_flag("--version", std::string("padic-transfer schema ") + jobs::kSchemaVersion);
  std::string command, spec_arg;
  uint64_t seed = 1;
  bool list = false, timing = false;
  int indent = 2;
  app.add_option("command", command, "subcommand, see --list");
  app.add_option("--json", spec_arg, "job spec: file path, - for stdin, or inline JSON");
  app.add_option("--seed", seed, "seed for randomized grids");
  app.add_flag("--list", list, "list subcommands and the operations they run");
  app.add_flag("--timing", timing, "include wall-clock time in meta");
  app.add_option("--indent", indent, "JSON indentation, -1 for compact");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : jobs::kUsage;
  }

  if (list) {
    jobs::json out = jobs::json::array();
    for (const auto& c : jobs::commands())
      out.push_back({{"command", c.name}, {"operation", c.operation}, {"summary", c.summary}});
    std::cout << out.dump(indent) << "\n";
    return 0;
  }
  if (command.empty()) {
    std::cerr << app.help();
    return jobs::kUsage;
  }
  jobs::json spec;
  try {
    spec = load_spec(spec_arg);
  } catch (const jobs::UsageError& e) {
    jobs::json rep{{"meta", {{"tool", "padic-transfer"}, {"schema", jobs::kSchemaVersion}}},
                   {"error", {{"kind", "usage"}, {"path", e.path()}, {"message", e.what()}}},
                   {"pass", false}};
    std::cout << rep.dump(indent) << "\n";
    return jobs::kUsage;
  }
  jobs::Options opt;
  opt.seed = seed;
  opt.timing = timing;
  auto outcome = jobs::run(command, spec, opt);
  std::cout << outcome.report.dump(indent) << "\n";
  return outcome.exit_code;
}
