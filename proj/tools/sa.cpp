// sa — shape-algebra workbench. Parses argv into a RunConfig and hands off
// to the library dispatcher; all command logic lives in shapealg/cli.hpp.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "shapealg/cli.hpp"

int main(int argc, char** argv) {
  using shapealg::RunConfig;

  CLI::App app{
      "shape-algebra workbench: presentations, completion, dimension counts,\n"
      "module checks, and coproduct closure for SL(3) shape algebras and\n"
      "their one-parameter deformations"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string q_text;
  bool as_json = false, as_csv = false;

  const auto add_common = [&](CLI::App* sub, bool takes_names, bool takes_by) {
    if (takes_names)
      sub->add_option("presentation", cfg.names,
                      "built-in presentation name(s); see 'present --help'");
    sub->add_flag("--json", as_json, "render the report as JSON");
    sub->add_flag("--csv", as_csv, "render tables as CSV");
    sub->add_option("--max-deg", cfg.max_deg, "degree bound for completion and counting");
    sub->add_option("--max-len", cfg.max_len, "word-length bound for counting");
    sub->add_option("--slack", cfg.slack, "extra window width for localized counts");
    sub->add_option("--q-value", q_text, "rational specialization a/b of the parameter");
    sub->add_option("--seed", cfg.seed, "seed for randomized cross-checks");
    if (takes_names) sub->add_option("--file", cfg.file, "read the presentation from a file");
    if (takes_by)
      sub->add_option("--by", cfg.by, "table selector: multidegree (default) or length");
  };

  add_common(app.add_subcommand("present", "print a presentation and validate its grading"),
             true, false);
  CLI::App* nf =
      app.add_subcommand("nf", "normal form of a polynomial modulo a completed presentation");
  nf->add_option("--expr", cfg.expr, "polynomial in the presentation's generators");
  add_common(nf, true, false);
  add_common(app.add_subcommand("complete", "run completion and report the rule system"), true,
             false);
  add_common(app.add_subcommand("hilbert", "graded dimension table of a presentation"), true,
             true);
  add_common(app.add_subcommand(
                 "flatness", "compare a deformed presentation's dimensions to its classical "
                             "partner, with an independent oracle cross-check"),
             true, true);
  add_common(app.add_subcommand("orthocells", "census of the fourteen small cells and the "
                                              "spanning vectors they generate"),
             false, false);
  CLI::App* modules = app.add_subcommand(
      "modules", "exact checks on the standard modules and their tensor squares");
  modules->add_option("--check", cfg.check, "what to verify: relations, span, or r12");
  add_common(modules, false, false);
  add_common(app.add_subcommand("lemma1", "coproduct closure of the subalgebra generator sets"),
             false, false);
  add_common(app.add_subcommand("report", "regenerate every acceptance artifact in one run"),
             false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (as_json && as_csv) {
    std::cerr << "usage error: choose at most one of --json / --csv\n";
    return 2;
  }
  cfg.format = as_json   ? RunConfig::Format::Json
               : as_csv ? RunConfig::Format::Csv
                        : RunConfig::Format::Text;
  if (!q_text.empty()) {
    try {
      cfg.q_value = shapealg::parse_rational(q_text);
    } catch (const shapealg::Error& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return 2;
    }
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return shapealg::dispatch(cfg, std::cout, std::cerr);
}
