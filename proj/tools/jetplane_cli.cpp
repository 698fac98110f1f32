// Command-line front end: exact computations on integral elements of the
// Cartan plane of a jet space, their polar spaces, and the singular-solution
// machinery for third-order scalar equations in two variables.
//
// Exit codes: 0 all requested checks pass, 1 a verification was falsified
// (certificates in the report), 2 malformed input or parameters.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "jetplane/cli.hpp"

namespace {

void add_context_flags(CLI::App* cmd, jetplane::RunConfig& cfg,
                       bool with_s = true) {
  cmd->add_option("-n", cfg.n, "base dimension n (>= 1)");
  cmd->add_option("-m", cfg.m, "fiber dimension m (>= 1)");
  cmd->add_option("-k", cfg.k, "jet order k (>= 1)");
  if (with_s) cmd->add_option("-s", cfg.s, "subspace dimension s");
}

void add_seed_and_samples(CLI::App* cmd, jetplane::RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed,
                  "PRNG seed (default 1; JETPLANE_SEED overrides the default)");
  cmd->add_option("--samples", cfg.samples, "number of seeded samples");
}

void add_format_flag(CLI::App* cmd, jetplane::RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  jetplane::RunConfig cfg;

  CLI::App app{
      "jetplane: exact calculator for non-maximal integral elements of the "
      "Cartan plane, their polar spaces, and singular solutions of "
      "third-order scalar equations"};
  app.require_subcommand(1);

  auto* dims = app.add_subcommand(
      "dims", "dimension report for the s-dimensional stratum (FORMULA vs "
              "RANK cross-check)");
  add_context_flags(dims, cfg);
  add_format_flag(dims, cfg);

  auto* check = app.add_subcommand(
      "check", "horizontality/isotropy/integrality of a serialized subspace");
  check->add_option("--input", cfg.input_path, "subspace file")->required();
  add_format_flag(check, cfg);

  auto* fiber = app.add_subcommand(
      "fiber", "degree-k generator of a horizontal isotropic subspace, with "
               "exact lift roundtrip");
  fiber->add_option("--input", cfg.input_path, "subspace file")->required();
  add_format_flag(fiber, cfg);

  auto* vt1 = app.add_subcommand(
      "verify-theorem1", "affine-bundle structure of the stratum: stabilizer, "
                         "restriction rank, and lift transitivity on seeded "
                         "subspaces");
  add_context_flags(vt1, cfg);
  add_seed_and_samples(vt1, cfg);
  add_format_flag(vt1, cfg);

  auto* polar = app.add_subcommand(
      "polar", "polar space dimensions and sharp-map ranks on seeded "
               "integral elements (FORMULA vs RANK)");
  add_context_flags(polar, cfg);
  add_seed_and_samples(polar, cfg);
  add_format_flag(polar, cfg);

  auto* contactize = app.add_subcommand(
      "contactize", "polar frame on the line chart; --verify runs the seeded "
                    "frame-vs-polar-plane sweep");
  add_context_flags(contactize, cfg, /*with_s=*/false);
  contactize->add_flag("--verify", cfg.verify,
                       "run the seeded kernel-condition check");
  add_seed_and_samples(contactize, cfg);
  add_format_flag(contactize, cfg);

  auto* ma = app.add_subcommand(
      "ma-example", "end-to-end singular-solution comparison of the "
                    "Monge-Ampere equation against a quasi-linear control");
  ma->add_option("--seed", cfg.seed, "PRNG seed for the sampled lines");
  add_format_flag(ma, cfg);

  auto* grid = app.add_subcommand(
      "grid", "full property suite over the (n, m, k, s) parameter grid");
  grid->add_option("--n-min", cfg.n_min, "smallest n (default 2)");
  grid->add_option("--n-max", cfg.n_max, "largest n (default 4)");
  grid->add_option("--m-min", cfg.m_min, "smallest m (default 1)");
  grid->add_option("--m-max", cfg.m_max, "largest m (default 2)");
  grid->add_option("--k-min", cfg.k_min, "smallest k (default 2)");
  grid->add_option("--k-max", cfg.k_max, "largest k (default 4)");
  add_seed_and_samples(grid, cfg);
  add_format_flag(grid, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << std::endl;
    return jetplane::kExitBadInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();

  const auto option_set = [sub](const std::string& name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  jetplane::ExplicitFlags given;
  given.seed = option_set("--seed");
  given.n_min = option_set("--n-min");
  given.n_max = option_set("--n-max");
  given.m_min = option_set("--m-min");
  given.m_max = option_set("--m-max");
  given.k_min = option_set("--k-min");
  given.k_max = option_set("--k-max");
  try {
    jetplane::apply_env_defaults(cfg, given);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return jetplane::kExitBadInput;
  }

  const jetplane::CliResult res = jetplane::run_cli(cfg);
  if (res.exit_code == jetplane::kExitBadInput)
    std::cerr << res.output;
  else
    std::cout << res.output;
  return res.exit_code;
}
