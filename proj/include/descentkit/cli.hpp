#pragma once

#include <optional>
#include <string>
#include <vector>

#include "descentkit/descent.hpp"
#include "descentkit/io.hpp"

namespace descentkit::cli {

struct CommonOptions {
  std::string out = "-";  // '-' writes to stdout
  std::uint64_t seed = kDefaultSeed;
  bool timing = false;  // timings are omitted by default so reports are byte-stable
  std::size_t retries = 16;
  std::uint64_t budget = 1ull << 22;
  std::size_t trials = 1000;
  std::uint64_t exhaustive_cap = 1ull << 20;
  bool run_oracle = true;
};

// --seed beats DESCENTKIT_SEED beats the built-in default; accepts decimal or
// 0x-prefixed hex.
std::uint64_t resolve_seed(const std::optional<std::string>& flag_value);

// 2 for parse errors, 4 for exhausted budgets, 1 for every other failure.
int exit_code_for(Errc c);

Json outcome_to_json(const DescentOutcome& out);

int cmd_validate(const std::vector<std::string>& files, const CommonOptions& o);
int cmd_descend(const std::string& map_path, const std::string& module_path,
                const CommonOptions& o);
int cmd_classify(const std::string& map_path, const std::vector<std::string>& module_paths,
                 const CommonOptions& o);
int cmd_gallery(const std::string& family, const std::string& out_dir, const CommonOptions& o);
int cmd_oracle(const std::string& map_path, std::size_t max_dim, const CommonOptions& o);

}  // namespace descentkit::cli
