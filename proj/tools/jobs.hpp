#pragma once

// JSON job runner behind the padic-transfer command line tool.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace jobs {

using json = nlohmann::json;

constexpr const char* kSchemaVersion = "1.0";

enum ExitCode { kPass = 0, kFail = 1, kInconclusive = 2, kUsage = 3 };

// Malformed job specification; path is a JSON pointer to the offending field.
class UsageError : public std::runtime_error {
 public:
  UsageError(std::string path, const std::string& what)
      : std::runtime_error(what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct CommandInfo {
  std::string name;
  std::string operation;
  std::string summary;
};

const std::vector<CommandInfo>& commands();

struct Options {
  uint64_t seed = 1;
  bool timing = false;
};

struct Outcome {
  json report;
  int exit_code = kPass;
};

// Never throws for mathematical failures; usage problems come back as
// exit code 3 with the offending path in the report.
Outcome run(const std::string& command, const json& spec, const Options& opt = {});

}  // namespace jobs
