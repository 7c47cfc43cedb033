#include <CLI11.hpp>

#include "descentkit/cli.hpp"
#include "descentkit/version.hpp"

int main(int argc, char** argv) {
  using namespace descentkit;

  CLI::App app{"decide and certify when modules over an algebra extension descend to the base"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  cli::CommonOptions opts;
  std::string seed_text;
  bool no_oracle = false;
  app.add_option("--out", opts.out, "report path, '-' for stdout")->capture_default_str();
  app.add_option("--seed", seed_text, "RNG seed, decimal or 0x-prefixed hex");
  app.add_flag("--timing", opts.timing, "include wall-clock timings in the report");
  app.add_option("--retries", opts.retries, "lift retry bound for the construction")
      ->capture_default_str();
  app.add_option("--budget", opts.budget, "search budget for enumeration and the oracle")
      ->capture_default_str();
  app.add_option("--trials", opts.trials, "random trials for isomorphism search")
      ->capture_default_str();
  app.add_option("--cap", opts.exhaustive_cap, "exhaustive isomorphism search cap")
      ->capture_default_str();
  app.add_flag("--no-oracle", no_oracle, "skip the independent extension oracle");

  std::vector<std::string> files;
  std::string map_path, module_path, family, out_dir;
  std::size_t max_dim = 3;

  CLI::App* c_validate = app.add_subcommand("validate", "validate algebra/module/map files");
  c_validate->add_option("files", files, "JSON files to check")->required()->expected(-1);

  CLI::App* c_descend = app.add_subcommand("descend", "run the descent construction on one module");
  c_descend->add_option("map", map_path, "structure map JSON")->required();
  c_descend->add_option("module", module_path, "module JSON over the target")->required();

  CLI::App* c_classify = app.add_subcommand("classify", "sweep many modules through the construction");
  c_classify->add_option("map", map_path, "structure map JSON")->required();
  c_classify->add_option("modules", files, "module JSON files")->required()->expected(-1);

  CLI::App* c_gallery = app.add_subcommand("gallery", "write a worked example family to a directory");
  c_gallery->add_option("family", family, "family spec, e.g. frobenius:2,1,1 or group:2,4,2")
      ->required();
  c_gallery->add_option("dir", out_dir, "output directory")->required();

  CLI::App* c_oracle = app.add_subcommand("oracle", "audit the criterion against brute force");
  c_oracle->add_option("map", map_path, "structure map JSON")->required();
  c_oracle->add_option("--max-dim", max_dim, "largest module dimension to audit")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    opts.seed = cli::resolve_seed(app.count("--seed") > 0 ? std::optional<std::string>(seed_text)
                                                          : std::nullopt);
  } catch (const Error& e) {
    Json j;
    j["error"] = errc_name(e.code());
    j["detail"] = e.what();
    std::cerr << j.dump(2) << "\n";
    return cli::exit_code_for(e.code());
  }
  opts.run_oracle = !no_oracle;

  if (c_validate->parsed()) return cli::cmd_validate(files, opts);
  if (c_descend->parsed()) return cli::cmd_descend(map_path, module_path, opts);
  if (c_classify->parsed()) return cli::cmd_classify(map_path, files, opts);
  if (c_gallery->parsed()) return cli::cmd_gallery(family, out_dir, opts);
  if (c_oracle->parsed()) return cli::cmd_oracle(map_path, max_dim, opts);
  return 2;
}
