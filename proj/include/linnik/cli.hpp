#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "linnik/constants.hpp"
#include "linnik/estimate.hpp"
#include "linnik/expsum.hpp"
#include "linnik/goldbach.hpp"
#include "linnik/ksolver.hpp"

namespace linnik {

enum class OutputFormat { json, csv, text };

/// Options shared by the subcommands. The defaults give the headline K values.
struct RunConfig {
  std::string preset = "paper";
  unsigned h = kDefaultH;
  uint64_t prime_limit = 200000;
  unsigned c2_M = 20;
  uint64_t c2_lower_limit = 10000;
  double tail_coefficient = kDefaultTailCoefficient;
  uint64_t seed = 20011;
  OutputFormat output_format = OutputFormat::text;
  unsigned threads = 1;
  std::optional<std::string> table_cache;
};

/// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

/// Environment variable consulted for the default --threads value.
inline constexpr const char* kThreadsEnv = "LINNIK_THREADS";

/// Entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

using Json = nlohmann::ordered_json;

Json to_json(const ConstantEstimate& e);
Json to_json(const ExponentResult& r);
Json to_json(const TheoremReport& r);
Json to_json(const VerifyReport& r, bool include_timing);

/// Renders a record; csv and text flatten nested keys with dots.
std::string render(const Json& record, OutputFormat format);

}  // namespace linnik
