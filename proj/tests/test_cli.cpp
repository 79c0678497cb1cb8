#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shapealg/cli.hpp"
#include "shapealg/weyl.hpp"

using namespace shapealg;

namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation run(const RunConfig& cfg) {
  std::ostringstream out, err;
  Invocation r;
  r.code = dispatch(cfg, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

RunConfig command(const std::string& name) {
  RunConfig cfg;
  cfg.command = name;
  return cfg;
}

}  // namespace

TEST(cli, orthocell_census_lists_every_cell) {
  const Invocation r = run(command("orthocells"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("14 cells: 6 singletons, 8 pairs"), std::string::npos);
  for (const Orthocell& c : orthocells())
    EXPECT_NE(r.out.find(c.name + ":"), std::string::npos) << c.name;
  EXPECT_NE(r.out.find("(1,1): 6 distinct vectors"), std::string::npos);
  EXPECT_NE(r.out.find("(1,2): 8 distinct vectors"), std::string::npos);
  EXPECT_NE(r.out.find("(2,1): 8 distinct vectors"), std::string::npos);
  EXPECT_NE(r.out.find("(2,2): 6 distinct vectors"), std::string::npos);
  EXPECT_NE(r.out.find("effective pairs: C1 C2 C5 C6 C7"), std::string::npos);
  EXPECT_NE(r.out.find("effective pairs: C2 C3 C4 C5 C8"), std::string::npos);
}

TEST(cli, nf_prints_certified_normal_forms) {
  RunConfig cfg = command("nf");
  cfg.names = {"sl3_shape_quantum"};
  cfg.expr = "q2*p2";
  const Invocation r = run(cfg);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("normal form: (-1 + q^-2)*p1*q1 + q^-1*p2*q2"), std::string::npos)
      << r.out;

  // the same class written over the opposite generator precedence
  cfg.expr = "q2*p2 + p1*q1 + p3*q3";
  const Invocation zero = run(cfg);
  EXPECT_EQ(zero.code, 0);
  EXPECT_NE(zero.out.find("normal form: 0"), std::string::npos) << zero.out;
}

TEST(cli, complete_narrates_the_collapse) {
  RunConfig cfg = command("complete");
  cfg.names = {"g1_shape_quantum_literal"};
  const Invocation r = run(cfg);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("(-q + 1)*t = 0 (overlap t*q3*t"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("t -> 0"), std::string::npos);
  EXPECT_NE(r.out.find("collapse: 1 -> 0"), std::string::npos);
  EXPECT_NE(r.out.find("the unit reduces to zero"), std::string::npos);

  cfg.format = RunConfig::Format::Json;
  const Invocation j = run(cfg);
  EXPECT_EQ(j.code, 1);
  const auto doc = nlohmann::json::parse(j.out);
  ASSERT_EQ(doc.at("witnesses").size(), 1u);
  const auto& w = doc.at("witnesses").at(0);
  EXPECT_EQ(w.at("kind"), "collapse");
  EXPECT_TRUE(w.at("unit_zero").get<bool>());
  EXPECT_EQ(w.at("zero_generators"), nlohmann::json::array({"t"}));
  EXPECT_EQ(doc.at("command"), "complete");
  EXPECT_EQ(doc.at("config").at("max_deg"), 4);
}

TEST(cli, flatness_agrees_for_the_localized_pair_and_flags_mismatches) {
  RunConfig cfg = command("flatness");
  cfg.names = {"g1_shape_classical", "g1_shape_quantum_amended"};
  cfg.by = "length";
  // the localized systems derive their exchange rules from degree-4
  // superpositions, so 4 is the first bound where the counts are final
  cfg.max_len = 4;
  const Invocation ok = run(cfg);
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("deformed vs classical word counts: tables agree"), std::string::npos);
  EXPECT_NE(ok.out.find("classical cumulative counts vs windowed oracle: tables agree"),
            std::string::npos);

  cfg.names = {"sl3_shape_classical", "g0_shape_classical"};
  cfg.max_len = 2;
  const Invocation bad = run(cfg);
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("mismatched rows"), std::string::npos) << bad.out;
}

TEST(cli, hilbert_csv_matches_the_dimension_formula) {
  RunConfig cfg = command("hilbert");
  cfg.names = {"sl3_shape_quantum"};
  cfg.max_deg = 4;
  cfg.format = RunConfig::Format::Csv;
  const Invocation r = run(cfg);
  EXPECT_EQ(r.code, 0);

  std::istringstream lines(r.out);
  std::string line;
  ASSERT_TRUE(std::getline(lines, line));
  EXPECT_EQ(line, "table,selector,key,count,stable");
  int rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string label, selector, key, count, stable;
    ASSERT_TRUE(std::getline(fields, label, ','));
    ASSERT_TRUE(std::getline(fields, selector, ','));
    ASSERT_TRUE(std::getline(fields, key, ','));
    ASSERT_TRUE(std::getline(fields, count, ','));
    ASSERT_TRUE(std::getline(fields, stable, ','));
    EXPECT_EQ(selector, "multidegree");
    const std::size_t colon = key.find(':');
    ASSERT_NE(colon, std::string::npos);
    const int n1 = std::stoi(key.substr(0, colon));
    const int n2 = std::stoi(key.substr(colon + 1));
    EXPECT_EQ(std::stoll(count), weyl_dim(n1, n2)) << key;
    ++rows;
  }
  EXPECT_EQ(rows, 15);  // multidegrees with n1 + n2 <= 4
}

TEST(cli, lemma1_reports_the_closure_witness) {
  RunConfig cfg = command("lemma1");
  cfg.format = RunConfig::Format::Json;
  const Invocation r = run(cfg);
  EXPECT_EQ(r.code, 1);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc.at("data").at("uq_g1").get<bool>());
  EXPECT_FALSE(doc.at("data").at("uq_g0").get<bool>());
  EXPECT_EQ(doc.at("data").at("coproduct_zero"), doc.at("data").at("coproduct_total"));
  EXPECT_FALSE(doc.at("data").at("k2_membership").at("inside").get<bool>());
  ASSERT_EQ(doc.at("witnesses").size(), 1u);
  const auto& w = doc.at("witnesses").at(0).at("witnesses").at(0);
  EXPECT_EQ(w.at("generator"), "Y2");
  EXPECT_EQ(w.at("involves"), "K2i");
}

TEST(cli, module_checks_pass_exactly_and_at_sample_points) {
  for (const std::string check : {"relations", "span", "r12"}) {
    RunConfig cfg = command("modules");
    cfg.check = check;
    const Invocation r = run(cfg);
    EXPECT_EQ(r.code, 0) << check << "\n" << r.out;
  }
  RunConfig cfg = command("modules");
  cfg.check = "r12";
  cfg.q_value = Rational(7);
  const Invocation r = run(cfg);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("commutation with every generator at q = 7: holds"),
            std::string::npos);
}

TEST(cli, usage_errors_exit_2) {
  EXPECT_EQ(run(command("frobnicate")).code, 2);

  RunConfig unknown = command("present");
  unknown.names = {"no_such_presentation"};
  const Invocation u = run(unknown);
  EXPECT_EQ(u.code, 2);
  EXPECT_NE(u.err.find("built in:"), std::string::npos);

  RunConfig noexpr = command("nf");
  noexpr.names = {"sl3_shape_classical"};
  EXPECT_EQ(run(noexpr).code, 2);

  RunConfig badby = command("hilbert");
  badby.names = {"sl3_shape_classical"};
  badby.by = "bogus";
  EXPECT_EQ(run(badby).code, 2);

  RunConfig zeroq = command("modules");
  zeroq.q_value = Rational(0);
  EXPECT_EQ(run(zeroq).code, 2);

  RunConfig nocsv = command("lemma1");
  nocsv.format = RunConfig::Format::Csv;
  EXPECT_EQ(run(nocsv).code, 2);

  RunConfig badbound = command("complete");
  badbound.names = {"sl3_shape_classical"};
  badbound.max_deg = 0;
  EXPECT_EQ(run(badbound).code, 2);

  EXPECT_EQ(run(command("modules")).code, 0);  // sanity: defaults stay valid
}

TEST(cli, identical_invocations_are_byte_identical) {
  std::vector<RunConfig> cases;
  cases.push_back(command("orthocells"));
  cases.back().format = RunConfig::Format::Json;
  cases.push_back(command("lemma1"));
  cases.push_back(command("hilbert"));
  cases.back().names = {"sl3_shape_classical"};
  cases.back().format = RunConfig::Format::Csv;
  for (const RunConfig& cfg : cases) {
    const Invocation a = run(cfg);
    const Invocation b = run(cfg);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << cfg.command;
  }
}

TEST(cli, presentation_files_feed_every_command) {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "sa_cli_test_presentation.txt";
  {
    std::ofstream f(path);
    f << "# toy commutative pair\n";
    f << "generators: a(1,0) b(0,1)\n";
    f << "b*a - a*b\n";
  }
  RunConfig cfg = command("present");
  cfg.file = path.string();
  const Invocation p = run(cfg);
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("every relation is homogeneous"), std::string::npos);

  RunConfig nf = command("nf");
  nf.file = path.string();
  nf.expr = "b*a*b";
  const Invocation n = run(nf);
  EXPECT_EQ(n.code, 0);
  EXPECT_NE(n.out.find("normal form: a*b*b"), std::string::npos) << n.out;

  RunConfig missing = command("complete");
  missing.file = "/no/such/file.alg";
  EXPECT_EQ(run(missing).code, 2);
  std::remove(path.string().c_str());
}
