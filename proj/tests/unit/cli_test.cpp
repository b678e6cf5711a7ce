#include <gtest/gtest.h>

#include <algorithm>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dlab/commands.hpp"
#include "dlab/constructions.hpp"
#include "dlab/error.hpp"
#include "json.hpp"

using namespace dlab;
using namespace dlab::cli;
namespace fs = std::filesystem;

namespace {

class Workspace : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  fs::path generate(const std::string& name, const std::string& config) const {
    const fs::path cfg = write(name + ".config.json", config);
    const fs::path out = dir_ / (name + ".json");
    std::ostringstream o, e;
    EXPECT_EQ(cmd_generate(cfg, out, o, e), kOk) << e.str();
    return out;
  }

  fs::path dir_;
};

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cs(line);
    std::string cell;
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Interchange, ParseFormatIsByteStable) {
  const std::string text = R"({"n": 3, "edges": [[2, 1, 0.5], [0, 1, 1]], "killing": [0, 0, 1.25], "measure": [1, 2, 0.1]})";
  const std::string once = format_graph_document(parse_graph_document(text));
  EXPECT_EQ(format_graph_document(parse_graph_document(once)), once);
  const auto doc = parse_graph_document(once);
  EXPECT_EQ(doc.graph.weight(1, 2), 0.5);
  EXPECT_EQ((*doc.measure)[2], 0.1);
}

TEST(Interchange, Diagnostics) {
  auto message = [](const std::string& text) {
    try {
      parse_graph_document(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("{\n  \"n\": 2,\n  \"edges\": [[0, 1, 1]\n}").find("line 4"), std::string::npos);
  EXPECT_NE(message(R"({"n": 2, "edges": [[0, 1]]})").find("/edges/0"), std::string::npos);
  EXPECT_NE(message(R"({"n": 2, "edges": [[0, 1, -1]]})").find("NegativeWeight"), std::string::npos);
  EXPECT_NE(message(R"({"n": 2, "weights": []})").find("/weights"), std::string::npos);
  EXPECT_NE(message(R"({"n": 2, "measure": [1, 0]})").find("NonPositiveMeasure"), std::string::npos);
  EXPECT_NE(message(R"({"n": 2, "measure": [1]})").find("/measure"), std::string::npos);
}

TEST(Interchange, InsideAppliesTruncation) {
  const std::string text = R"({"n": 3, "edges": [[0, 1, 1], [1, 2, 1]], "measure": [1, 2, 3], "inside": [1]})";
  const auto doc = parse_graph_document(text);
  const auto d = resolve(doc, BoundaryMode::Dirichlet);
  EXPECT_EQ(d.graph.killing(0), 2.0);
  EXPECT_EQ(d.measure[0], 2.0);
  EXPECT_EQ(resolve(doc, BoundaryMode::Neumann).graph.killing(0), 0.0);
}

TEST(ParseHelpers, NumberListsAndModes) {
  const auto v = parse_number_list("3, 4,6,inf");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[2], 6.0);
  EXPECT_TRUE(std::isinf(v[3]));
  EXPECT_TRUE(parse_number_list("").empty());
  EXPECT_THROW(parse_number_list("3,x"), Error);
  EXPECT_EQ(parse_mode("neumann"), BoundaryMode::Neumann);
  EXPECT_THROW(parse_mode("robin"), Error);
}

TEST_F(Workspace, GenerateLatticeUniform) {
  const auto out = generate("lattice", R"({"generator": {"name": "lattice_ball", "d": 2, "r": 1, "boundary": "none"},
                                          "measure": {"name": "uniform", "total": 1}})");
  const auto doc = read_graph_document(out);
  EXPECT_EQ(doc.graph.size(), 9);
  EXPECT_NEAR(doc.measure->total(), 1.0, 1e-15);
  EXPECT_TRUE(doc.graph.killing_free());
}

TEST_F(Workspace, GenerateEchoesCounts) {
  const fs::path cfg = write("c.json", R"({"generator": {"name": "lattice_ball", "d": 2, "r": 1},
                                           "measure": {"name": "uniform", "total": 1}})");
  std::ostringstream o, e;
  ASSERT_EQ(cmd_generate(cfg, dir_ / "g.json", o, e), kOk);
  const std::string line = o.str();
  ASSERT_EQ(line.rfind("vertices 9, edges 12, m(X) ", 0), 0u) << line;
  // nine masses of 1/9 sum to 1 up to rounding
  EXPECT_NEAR(std::stod(line.substr(27)), 1.0, 1e-15);
}

TEST_F(Workspace, GenerateTreeWithPowerMeasure) {
  const auto out = generate("tree", R"({"generator": {"name": "binary_tree", "depth": 3},
                                       "measure": {"name": "power", "eps": 2}})");
  const auto doc = read_graph_document(out);
  ASSERT_EQ(doc.graph.size(), 15);
  for (Index j = 0; j < 15; ++j) EXPECT_NEAR((*doc.measure)[j], 1.0 / std::pow(j + 1.0, 2), 1e-16);
  EXPECT_EQ(doc.graph.degree_bound(), 3.0);
  EXPECT_EQ(doc.graph.killing(14), 2.0);
}

TEST_F(Workspace, GenerateTelescopingAlongBfs) {
  const auto out = generate("tele", R"({"generator": {"name": "lattice_ball", "d": 1, "r": 2},
                                       "measure": {"name": "telescoping", "sequence": {"kind": "linear"}},
                                       "root": 2})");
  const auto doc = read_graph_document(out);
  // bfs from the middle of the path: 2, 1, 3, 0, 4
  const auto m = telescoping_measure(Sequence::linear(), 5);
  EXPECT_EQ((*doc.measure)[2], m[0]);
  EXPECT_EQ((*doc.measure)[1], m[1]);
  EXPECT_EQ((*doc.measure)[3], m[2]);
  EXPECT_EQ((*doc.measure)[0], m[3]);
  EXPECT_EQ((*doc.measure)[4], m[4]);
}

TEST_F(Workspace, FilePassthroughIsByteStable) {
  const auto first = generate("src", R"({"generator": {"name": "binary_tree", "depth": 2, "boundary": "neumann"},
                                        "measure": {"name": "normalizing"}})");
  const auto second = generate("copy", R"({"generator": {"name": "file", "path": "src.json"},
                                          "measure": {"name": "file"}})");
  EXPECT_EQ(read_text_file(first), read_text_file(second));
}

TEST_F(Workspace, GenerateConfigErrors) {
  auto run = [&](const std::string& cfg) {
    std::ostringstream o, e;
    const int code = cmd_generate(write("bad.json", cfg), dir_ / "x.json", o, e);
    return std::make_pair(code, e.str());
  };
  auto [c1, m1] = run(R"({"generator": {"name": "lattice_ball", "d": 0, "r": 1}, "measure": {"name": "uniform"}})");
  EXPECT_EQ(c1, kBadInput);
  EXPECT_NE(m1.find("/generator/d"), std::string::npos);
  auto [c2, m2] = run(R"({"generator": {"name": "torus"}, "measure": {"name": "uniform"}})");
  EXPECT_NE(m2.find("/generator/name"), std::string::npos);
  auto [c3, m3] = run("{\"generator\": {\"name\": \"binary_tree\", \"depth\": 2},\n \"measure\": }");
  EXPECT_EQ(c3, kBadInput);
  EXPECT_NE(m3.find("line 2"), std::string::npos);
  auto [c4, m4] = run(R"({"generator": {"name": "binary_tree", "depth": 2}, "measure": {"name": "file"}})");
  EXPECT_NE(m4.find("/measure"), std::string::npos);
  auto [c5, m5] = run(R"({"generator": {"name": "binary_tree", "depth": 2}, "measure": {"name": "power", "eps": -1}})");
  EXPECT_NE(m5.find("/measure/eps"), std::string::npos);
  auto [c6, m6] = run(R"({"generator": {"name": "binary_tree", "depth": 2}, "measure": {"name": "uniform"}, "seed": 1})");
  EXPECT_NE(m6.find("/seed"), std::string::npos);
}

TEST_F(Workspace, SpectrumCsv) {
  const auto edge = write("edge.json", R"({"n": 2, "edges": [[0, 1, 1]], "measure": [1, 1]})");
  SpectrumArgs args;
  args.input = edge;
  std::ostringstream o, e;
  ASSERT_EQ(cmd_spectrum(args, o, e), kOk);
  const auto rows = csv_rows(o.str());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"k", "lambda", "mean_prefix"}));
  EXPECT_NEAR(std::stod(rows[1][1]), 0.0, 1e-14);
  EXPECT_NEAR(std::stod(rows[1][2]), 0.0, 1e-14);
  EXPECT_NEAR(std::stod(rows[2][1]), 2.0, 1e-14);
  EXPECT_NEAR(std::stod(rows[2][2]), 1.0, 1e-14);

  const auto vertex = write("vertex.json", R"({"n": 1, "killing": [2], "measure": [1]})");
  args.input = vertex;
  std::ostringstream o2;
  ASSERT_EQ(cmd_spectrum(args, o2, e), kOk);
  EXPECT_EQ(o2.str(), "k,lambda,mean_prefix\n1,2,2\n");

  const auto k4 = write("k4.json", R"({"n": 4, "edges": [[0,1,1],[0,2,1],[0,3,1],[1,2,1],[1,3,1],[2,3,1]],
                                       "measure": [1, 1, 1, 1]})");
  args.input = k4;
  std::ostringstream o3;
  ASSERT_EQ(cmd_spectrum(args, o3, e), kOk);
  const auto k4rows = csv_rows(o3.str());
  ASSERT_EQ(k4rows.size(), 5u);
  EXPECT_NEAR(std::stod(k4rows[1][1]), 0.0, 1e-12);
  for (int k = 2; k <= 4; ++k) EXPECT_NEAR(std::stod(k4rows[static_cast<std::size_t>(k)][1]), 4.0, 1e-12);

  args.k = 2;
  std::ostringstream o4;
  ASSERT_EQ(cmd_spectrum(args, o4, e), kOk);
  EXPECT_EQ(csv_rows(o4.str()).size(), 3u);
}

TEST_F(Workspace, SpectrumBadInput) {
  SpectrumArgs args;
  args.input = write("broken.json", R"({"n": 2, "edges": [[0, 1, 1]]})");
  std::ostringstream o, e;
  EXPECT_EQ(cmd_spectrum(args, o, e), kBadInput);
  EXPECT_NE(e.str().find("no measure"), std::string::npos);
  args.input = dir_ / "missing.json";
  EXPECT_EQ(cmd_spectrum(args, o, e), kBadInput);
}

TEST_F(Workspace, VerifyLatticeBallFiveReports) {
  VerifyArgs args;
  args.input = generate("z3", R"({"generator": {"name": "lattice_ball", "d": 3, "r": 3},
                                 "measure": {"name": "uniform", "total": 1}})");
  std::ostringstream o, e;
  ASSERT_EQ(cmd_verify(args, o, e), kOk) << e.str();
  const auto report = nlohmann::json::parse(o.str());
  EXPECT_TRUE(report["pass"].get<bool>());
  ASSERT_EQ(report["reports"].size(), 5u);
  std::vector<std::string> names;
  for (const auto& r : report["reports"]) {
    EXPECT_TRUE(r["pass"].get<bool>());
    names.push_back(r["bound"].get<std::string>());
  }
  EXPECT_EQ(names, (std::vector<std::string>{"ENUMERATION", "LINEAR", "HEAT_TRACE", "HEAT_DECAY", "MU_UPPER"}));
  EXPECT_EQ(report["parameters"]["seed"].get<int>(), 1);
  EXPECT_EQ(report["input"]["fnv1a64"].get<std::string>().size(), 16u);
  EXPECT_EQ(report["sobolev"][0]["kind"], "EXACT");
}

TEST_F(Workspace, VerifyTreePowerMeasure) {
  VerifyArgs args;
  args.input = generate("tree", R"({"generator": {"name": "binary_tree", "depth": 6},
                                   "measure": {"name": "power", "eps": 1}})");
  args.p = {4.0};
  std::ostringstream o, e;
  ASSERT_EQ(cmd_verify(args, o, e), kOk) << e.str();
  const auto report = nlohmann::json::parse(o.str());
  bool has_mu = false;
  for (const auto& r : report["reports"]) has_mu = has_mu || r["bound"] == "MU_UPPER";
  EXPECT_TRUE(has_mu);
}

TEST_F(Workspace, VerifyAnchoredAndMultipleP) {
  VerifyArgs args;
  args.input = generate("free", R"({"generator": {"name": "lattice_ball", "d": 2, "r": 2, "boundary": "none"},
                                   "measure": {"name": "uniform", "total": 3}})");
  args.alpha = 1.0;
  args.anchor = 12;
  args.p = {3.0, kInfinity};
  std::ostringstream o, e;
  // lambda_1 = 0 on the free ball, so the anchored k = 1 enumeration bound cannot hold
  ASSERT_EQ(cmd_verify(args, o, e), kCheckFailed) << e.str();
  const std::string failures = e.str();
  EXPECT_EQ(failures.rfind("FAIL ENUMERATION p=inf k=1 ", 0), 0u) << failures;
  EXPECT_EQ(std::count(failures.begin(), failures.end(), '\n'), 1);
  const auto report = nlohmann::json::parse(o.str());
  // plain form is singular: only anchored ENUMERATION, LINEAR and MU_UPPER
  ASSERT_EQ(report["reports"].size(), 3u);
  EXPECT_EQ(report["notes"].size(), 1u);
  EXPECT_EQ(report["enumeration"]["root"], 12);
  EXPECT_EQ(report["reports"][0]["bound"], "ENUMERATION");
  EXPECT_EQ(report["reports"][0]["records"][0]["k"], 1);
  EXPECT_TRUE(report["reports"][1]["pass"].get<bool>());
  EXPECT_TRUE(report["reports"][2]["pass"].get<bool>());
}

TEST_F(Workspace, VerifyIsDeterministic) {
  VerifyArgs args;
  args.input = generate("tele", R"({"generator": {"name": "binary_tree", "depth": 4},
                                   "measure": {"name": "telescoping", "sequence": {"kind": "polynomial", "parameter": 2}}})");
  args.p = {3.0, 4.0, 6.0, kInfinity};
  args.seed = 17;
  std::ostringstream a, b, e;
  ASSERT_EQ(cmd_verify(args, a, e), kOk) << e.str();
  args.threads = 3;
  ASSERT_EQ(cmd_verify(args, b, e), kOk);
  EXPECT_EQ(a.str(), b.str());
}

TEST_F(Workspace, VerifyFaultInjection) {
  VerifyArgs args;
  args.input = generate("z2", R"({"generator": {"name": "lattice_ball", "d": 2, "r": 2},
                                 "measure": {"name": "uniform", "total": 1}})");
  args.spectrum_hook = [](Spectrum& s) { s.lambdas[3] = 0.0; };
  std::ostringstream o, e;
  EXPECT_EQ(cmd_verify(args, o, e), kCheckFailed);
  EXPECT_NE(e.str().find("FAIL ENUMERATION p=inf k=4 "), std::string::npos) << e.str();
  const auto report = nlohmann::json::parse(o.str());
  EXPECT_FALSE(report["pass"].get<bool>());
  EXPECT_FALSE(report["reports"][0]["pass"].get<bool>());
  EXPECT_EQ(report["reports"][0]["tightest"]["k"], 4);
}

TEST_F(Workspace, VerifyEnumerationFile) {
  VerifyArgs args;
  args.input = write("path.json", R"({"n": 3, "edges": [[0, 1, 1], [1, 2, 1]], "killing": [1, 0, 1],
                                      "measure": [0.2, 0.3, 0.5]})");
  args.enumeration = "file";
  args.enumeration_file = write("order.txt", "2 0 1\n");
  std::ostringstream o, e;
  ASSERT_EQ(cmd_verify(args, o, e), kOk) << e.str();
  EXPECT_EQ(nlohmann::json::parse(o.str())["reports"][0]["inputs"]["enumeration"], "file");
  args.enumeration_file = write("bad_order.txt", "2 0 0\n");
  EXPECT_EQ(cmd_verify(args, o, e), kBadInput);
  args.alpha = 1.0;
  args.anchor = 0;
  args.enumeration_file = write("order2.txt", "[2, 0, 1]");
  std::ostringstream o2, e2;
  EXPECT_EQ(cmd_verify(args, o2, e2), kBadInput);
  EXPECT_NE(e2.str().find("BadEnumeration"), std::string::npos);
}

TEST_F(Workspace, VerifyRejectsBadParameters) {
  VerifyArgs args;
  args.input = write("v.json", R"({"n": 1, "killing": [2], "measure": [1]})");
  std::ostringstream o, e;
  args.p = {2.0};
  EXPECT_EQ(cmd_verify(args, o, e), kBadInput);
  args.p = {4.0};
  args.anchor = 3;
  args.alpha = 1.0;
  EXPECT_EQ(cmd_verify(args, o, e), kBadInput);
  VerifyArgs singular;
  singular.input = write("s.json", R"({"n": 2, "edges": [[0, 1, 1]], "measure": [1, 1]})");
  EXPECT_EQ(cmd_verify(singular, o, e), kBadInput);
  EXPECT_NE(e.str().find("SingularForm"), std::string::npos);
}

TEST_F(Workspace, HeatCsv) {
  HeatArgs args;
  args.input = write("v.json", R"({"n": 1, "killing": [2], "measure": [1]})");
  args.times = {0.5, 1.0};
  std::ostringstream o, e;
  ASSERT_EQ(cmd_heat(args, o, e), kOk) << e.str();
  const auto rows = csv_rows(o.str());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "p_2t_xx", "c1_bound", "margin"}));
  EXPECT_NEAR(std::stod(rows[1][1]), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(std::stod(rows[2][1]), std::exp(-4.0), 1e-15);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(std::stod(rows[i][3]), 0.0);

  args.times.clear();
  std::ostringstream empty;
  ASSERT_EQ(cmd_heat(args, empty, e), kOk);
  EXPECT_EQ(empty.str(), "t,p_2t_xx,c1_bound,margin\n");

  args.times = {-1.0};
  EXPECT_EQ(cmd_heat(args, empty, e), kBadInput);
}

TEST_F(Workspace, HeatMarginsNonnegativeOnDefiniteInput) {
  HeatArgs args;
  args.input = generate("z3", R"({"generator": {"name": "lattice_ball", "d": 3, "r": 2},
                                 "measure": {"name": "uniform", "total": 1}})");
  args.times = {0.1, 0.5, 1.0, 2.0, 5.0};
  for (Index x : {0, 31, 62}) {
    args.vertex = x;
    for (double p : {3.0, 4.0, 6.0}) {
      args.p = p;
      std::ostringstream o, e;
      ASSERT_EQ(cmd_heat(args, o, e), kOk);
      const auto rows = csv_rows(o.str());
      for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(std::stod(rows[i][3]), 0.0);
    }
  }
}
