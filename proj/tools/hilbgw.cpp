#include "hilbgw/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace hilbgw;
using namespace hilbgw::cli;

struct Options {
  unsigned threads = 1;
  std::string cache;
  bool json = false;
  bool csv = false;
  bool approximate = false;
  bool timing = false;

  std::string cls;
  std::string insertions;
  int degree = 0;
  int pairs = 0;
  bool paper = false;
  int max_degree = 7;
  int n1 = 4;
  int n2 = 2;
  int nd = 0;
  bool oracle_engine = false;
  std::string cache_path;
  std::string reexport;
  bool verify = false;
  int warm_degree = 0;
  std::string target = "hilb2p2";
};

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Genus-0 Gromov-Witten invariants of Hilb^2(P^2), hyperelliptic counts and quantum cohomology"};
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads for stage solving")->check(CLI::Range(1u, 256u));
  app.add_option("--cache", o.cache, "Load the memo store from this file if present and save it on success");
  app.add_flag("--float", o.approximate, "Add an approximate decimal rendering next to exact values");
  app.add_flag("--timing", o.timing, "Report wall-clock time");

  auto* inv = app.add_subcommand("invariant", "Compute one invariant I_(a,b)(T_i1,...,T_in)");
  inv->add_option("--class", o.cls, "Curve class a,b")->required();
  inv->add_option("--insertions", o.insertions, "Basis indices, e.g. 6,7 or 4x13")->required();
  inv->add_flag("--json", o.json, "Emit a JSON record");

  auto* hyp = app.add_subcommand("hyperelliptic", "Invariants I and hyperelliptic counts E over all genera");
  hyp->add_option("--degree", o.degree, "Plane degree d")->required();
  hyp->add_option("--pairs", o.pairs, "Number l of conjugate point pairs");
  auto* hj = hyp->add_flag("--json", o.json, "Emit a JSON record");
  hyp->add_flag("--csv", o.csv, "Emit CSV with a header row")->excludes(hj);

  auto* tab = app.add_subcommand("tables", "Regenerate the published tables and compare every cell");
  tab->add_flag("--paper", o.paper, "Compare against the embedded published tables")->required();
  tab->add_option("--max-degree", o.max_degree, "Largest degree column (2..7)");
  tab->add_flag("--json", o.json, "Emit a JSON record");

  auto* qc = app.add_subcommand("qcoh", "Verify the small quantum products and relations");
  qc->add_option("--n1", o.n1, "Truncation order in q1");
  qc->add_option("--n2", o.n2, "Truncation order in q2");
  qc->add_flag("--json", o.json, "Emit a JSON record");

  auto* orc = app.add_subcommand("oracle", "Kontsevich's number of rational plane curves of degree d");
  orc->add_option("--nd", o.nd, "Degree d")->required();
  orc->add_flag("--engine", o.oracle_engine, "Also compute N_d with the WDVV engine on P^2 and compare");
  orc->add_flag("--json", o.json, "Emit a JSON record");

  auto* cache = app.add_subcommand("cache", "Export or import the memo store");
  cache->require_subcommand(1);
  auto* exp = cache->add_subcommand("export", "Write the memo store to a file");
  exp->add_option("path", o.cache_path, "Output file")->required();
  exp->add_option("--warm-degree", o.warm_degree, "Fill the store with all tables up to this degree first");
  auto* imp = cache->add_subcommand("import", "Validate and load a cache file");
  imp->add_option("path", o.cache_path, "Input file")->required();
  imp->add_option("--export", o.reexport, "Write the loaded store back out to this file");
  imp->add_flag("--verify", o.verify, "Recompute every loaded entry and compare");

  auto* dat = app.add_subcommand("datum", "Dump a target datum as JSON");
  dat->add_option("--target", o.target, "hilb2p2 or p2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::usage;
  }

  Engine engine(hilb2_datum());
  Context ctx{engine, std::cout, std::cerr, o.threads,
              o.json ? Format::json : (o.csv ? Format::csv : Format::text), o.approximate, o.timing};

  return guarded(ctx, [&]() -> int {
    if (!o.cache.empty() && std::ifstream(o.cache).good()) load_cache_file(engine, o.cache);

    int rc = exit_code::ok;
    if (*inv) {
      rc = cmd_invariant(ctx, parse_class(o.cls), parse_insertions(o.insertions, engine.datum().size()));
    } else if (*hyp) {
      rc = cmd_hyperelliptic(ctx, o.degree, o.pairs);
    } else if (*tab) {
      rc = cmd_tables(ctx, o.max_degree);
    } else if (*qc) {
      rc = cmd_qcoh(ctx, o.n1, o.n2);
    } else if (*orc) {
      rc = cmd_oracle(ctx, o.nd, o.oracle_engine);
    } else if (*exp) {
      rc = cmd_cache_export(ctx, o.cache_path, o.warm_degree);
    } else if (*imp) {
      rc = cmd_cache_import(ctx, o.cache_path, o.reexport, o.verify);
    } else if (*dat) {
      rc = cmd_datum(ctx, o.target);
    }

    if (rc == exit_code::ok && !o.cache.empty()) save_cache_file(engine, o.cache);
    return rc;
  });
}
