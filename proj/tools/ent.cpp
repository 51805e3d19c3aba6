// ent: command-line front end for the multient library.
//
//   ent measure --named ghz --n 3 --measures gme_ame,scott
//   ent weyl --mode sweep --samples 100 --seed 1 --csv weyl.csv
//   ent perm --d 3 --measures gme_ame,scott --classes classes.csv --audit audit.json
//   ent catalog --list

#include <iostream>

#include <CLI11.hpp>

#include "multient/commands.hpp"

int main(int argc, char** argv) {
  using namespace multient;

  CLI::App app{"Multipartite entanglement measures for pure qudit states"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads (default: ENT_THREADS or all cores)");
    sub->add_option("--seed", cfg.seed, "Run seed; per-item seeds are derived from it");
    sub->add_option("--residual-tol", cfg.solver_residual, "Polygon solver acceptance residual");
    sub->add_option("--max-restarts", cfg.max_restarts, "Polygon solver starts");
  };

  MeasureOptions mopts;
  auto* measure = app.add_subcommand("measure", "Evaluate measures for one state (JSON report)");
  measure->add_option("--state", mopts.state_path, "StateFile JSON");
  measure->add_option("--named", mopts.named, "Catalog state name");
  measure->add_option("--param", mopts.params, "Catalog parameter key=value (complex allowed, e.g. 0.3+0.4i)");
  measure->add_option("--n", mopts.n, "Party count for catalog states that take one");
  measure->add_option("--d", mopts.d, "Local dimension for catalog states that take one");
  measure->add_option("--measures", mopts.measures, "Comma list of gme_ame, scott, polygon");
  measure->add_option("--out", mopts.out_path, "Write the report here instead of stdout");
  add_common(measure);

  WeylOptions wopts;
  auto* weyl = app.add_subcommand("weyl", "Weyl-chamber family: numeric vs closed form (CSV)");
  weyl->add_option("--mode", wopts.mode, "sweep or edge");
  weyl->add_option("--edge", wopts.edge, "local_cnot or swap_dcnot (edge mode)");
  weyl->add_option("--samples", wopts.samples, "Number of points");
  weyl->add_option("--csv", wopts.csv_path, "Output CSV (default stdout)");
  add_common(weyl);

  PermOptions popts;
  auto* perm = app.add_subcommand("perm", "Exhaustive permutation-state sweep and classes");
  perm->add_option("--d", popts.d, "Local dimension, 2 or 3");
  perm->add_option("--measures", popts.measures, "Comma list of gme_ame, scott, polygon");
  perm->add_option("--enphase", popts.enphase, "none or binary (d = 2)");
  perm->add_option("--csv", popts.csv_path, "Per-state record CSV");
  perm->add_option("--classes", popts.classes_path, "Class-table CSV");
  perm->add_option("--audit", popts.audit_path, "Discrepancy report JSON against the reference tables");
  perm->add_option("--class-eps", cfg.class_eps, "Merge tolerance for numeric (polygon) classes");
  add_common(perm);

  CatalogOptions copts;
  auto* catalog = app.add_subcommand("catalog", "List catalog states or emit one as a StateFile");
  catalog->add_flag("--list", copts.list, "List names and parameters");
  catalog->add_option("--emit", copts.emit, "Catalog name to write");
  catalog->add_option("--param", copts.params, "Parameter key=value");
  catalog->add_option("--n", copts.n, "Party count");
  catalog->add_option("--d", copts.d, "Local dimension");
  catalog->add_option("--out", copts.out_path, "Output path (default stdout)");
  add_common(catalog);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (measure->parsed()) return cmd_measure(mopts, cfg, std::cout, std::cerr);
  if (weyl->parsed()) return cmd_weyl(wopts, cfg, std::cout, std::cerr);
  if (perm->parsed()) return cmd_perm(popts, cfg, std::cout, std::cerr);
  return cmd_catalog(copts, cfg, std::cout, std::cerr);
}
