#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "cactus/cli.hpp"

using namespace cactus;

namespace {

struct RawArgs {
  std::string family = "mbar";
  std::string degree = "1";
  std::string n = "0";
  std::string emit = "all";
  std::string format = "json";
  std::string cache_dir;
  int jobs = 1;
  int max_deg = 0;
  int a = 0;
  int gen_m = 0;
  std::string fit;
  std::string check;
  bool allow_large = false;
};

void add_common(CLI::App* cmd, RawArgs& raw) {
  cmd->add_option("--family", raw.family, "algebra family: mbar, arnold, m0, pvb, pfb, psigma");
  cmd->add_option("--degree", raw.degree, "cohomological degree or LO:HI range");
  cmd->add_option("--n", raw.n, "number of labels, N or LO:HI");
  cmd->add_option("--format", raw.format, "output format: json, csv, text-table");
  cmd->add_option("--cache-dir", raw.cache_dir, "result cache directory")
      ->envname("REPSTAB_CACHE");
  cmd->add_option("--jobs", raw.jobs, "worker threads for independent grid cells");
  cmd->add_flag("--allow-large", raw.allow_large, "override the size guards");
}

RunConfig to_config(const RawArgs& raw) {
  RunConfig c;
  c.family = parse_family(raw.family);
  c.degrees = parse_range(raw.degree);
  c.ns = parse_range(raw.n);
  c.emit = raw.emit;
  c.format = raw.format;
  c.cache_dir = raw.cache_dir;
  c.jobs = raw.jobs;
  c.max_deg = raw.max_deg;
  c.a = raw.a;
  c.gen_m = raw.gen_m;
  if (!raw.fit.empty()) c.fit = parse_range(raw.fit);
  if (!raw.check.empty()) c.check = parse_range(raw.check);
  c.allow_large = raw.allow_large;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cohomology computations for six presented algebra families"};
  app.require_subcommand(1);

  RawArgs raw;
  CLI::App* compute = app.add_subcommand("compute", "dimensions, characters, decompositions");
  add_common(compute, raw);
  compute->add_option("--emit", raw.emit, "all, dimension, character, or decomposition");

  CLI::App* stability = app.add_subcommand("stability", "representation stability report");
  add_common(stability, raw);

  CLI::App* fitc = app.add_subcommand("fit-charpoly", "fit a character polynomial");
  add_common(fitc, raw);
  fitc->add_option("--fit", raw.fit, "levels used to fit, LO:HI")->required();
  fitc->add_option("--check", raw.check, "levels used to validate, LO:HI");
  fitc->add_option("--max-deg", raw.max_deg, "maximum polynomial degree")->required();

  CLI::App* fitb = app.add_subcommand("fit-betti", "fit a Betti-number polynomial");
  add_common(fitb, raw);
  fitb->add_option("--fit", raw.fit, "levels used to fit, LO:HI")->required();
  fitb->add_option("--check", raw.check, "levels used to validate, LO:HI");
  fitb->add_option("--max-deg", raw.max_deg, "maximum polynomial degree")->required();

  CLI::App* coin = app.add_subcommand("coinvariants", "frozen-label coinvariant probe");
  add_common(coin, raw);
  coin->add_option("--a", raw.a, "number of frozen labels")->required();

  CLI::App* gend = app.add_subcommand("gen-degree", "orbit-generation check");
  add_common(gend, raw);
  gend->add_option("--gen-m", raw.gen_m, "generation level m")->required();

  app.add_subcommand("selftest", "run the internal invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("selftest")) return cmd_selftest(std::cout);
    RunConfig config = to_config(raw);
    if (app.got_subcommand(compute)) return cmd_compute(config, std::cout);
    if (app.got_subcommand(stability)) return cmd_stability(config, std::cout);
    if (app.got_subcommand(fitc)) return cmd_fit_charpoly(config, std::cout);
    if (app.got_subcommand(fitb)) return cmd_fit_betti(config, std::cout);
    if (app.got_subcommand(coin)) return cmd_coinvariants(config, std::cout);
    if (app.got_subcommand(gend)) return cmd_gendegree(config, std::cout);
    std::cerr << "unknown command\n";
    return kExitUsage;
  } catch (const SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << '\n';
    return kExitSizeGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
}
