#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = walkrank::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> rows(const std::string& tsv) {
  std::vector<std::vector<std::string>> table;
  std::istringstream in(tsv);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream fields(line);
    for (std::string cell; std::getline(fields, cell, '\t');) cells.push_back(cell);
    table.push_back(cells);
  }
  return table;
}

std::string data(const std::string& name) { return oracle::data_path(name); }

}  // namespace

TEST(Cli, RankPrintsTsvByScore) {
  const auto r = run({"rank", data("fig1.tsv")});
  ASSERT_EQ(r.code, walkrank::cli::kExitOk) << r.err;
  const auto table = rows(r.out);
  ASSERT_EQ(table.size(), 5u);
  EXPECT_EQ(table[0][0], "4");
  EXPECT_NEAR(std::stod(table[0][1]), 0.43, 0.005);
  EXPECT_EQ(table[4][0], "1");
  EXPECT_NEAR(std::stod(table[4][1]), 0.04, 0.005);
}

TEST(Cli, RankJsonCarriesSchema) {
  const auto r = run({"--format", "json", "rank", data("fig1.tsv"), "--alpha", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema"], "walkrank/v1");
  EXPECT_EQ(doc["kind"], "rank");
  for (const auto& entry : doc["results"]) EXPECT_DOUBLE_EQ(entry["score"].get<double>(), 0.2);
}

TEST(Cli, NonConvergenceExitsThree) {
  const auto r = run({"rank", data("fig1.tsv"), "--alpha", "1"});
  EXPECT_EQ(r.code, walkrank::cli::kExitNumerical);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("converge"), std::string::npos);
}

TEST(Cli, CentralityTable) {
  const auto r = run({"centrality", data("centrality.tsv"), "--undirected", "--measure",
                      "degree,betweenness"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = rows(r.out);
  ASSERT_GE(table.size(), 6u);
  EXPECT_EQ(table[1][0], "1");
  EXPECT_NEAR(std::stod(table[1][1]), 1.98, 0.01);
  EXPECT_NEAR(std::stod(table[2][2]), 3.14, 0.01);
}

TEST(Cli, SecondOrderNeedsSeed) {
  const auto r = run({"centrality", data("centrality.tsv"), "--undirected", "--measure", "second-order"});
  EXPECT_EQ(r.code, walkrank::cli::kExitInput);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, RecommendExcludesCollectedItems) {
  const auto r = run({"recommend", data("probs.tsv"), "--method", "probs", "--user", "u2", "--top", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["kind"], "recommend");
  std::vector<std::string> labels;
  for (const auto& entry : doc["results"]) labels.push_back(entry["label"]);
  ASSERT_GE(labels.size(), 2u);
  EXPECT_EQ(labels[0], "i1");
  EXPECT_EQ(labels[1], "i2");
  for (const auto& label : labels) {
    EXPECT_NE(label, "i3");
    EXPECT_NE(label, "i4");
  }
  EXPECT_EQ(doc["excluded"], nlohmann::json::array({"i3", "i4"}));
}

TEST(Cli, AbsorbDuality) {
  const auto r = run({"absorb", data("duality.tsv"), "--undirected", "--sinks", data("duality_sinks.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto table = rows(r.out);
  ASSERT_EQ(table.size(), 4u);
  EXPECT_EQ(table[0], (std::vector<std::string>{"node", "A", "Z"}));
  EXPECT_EQ(table[1][0], "X");
  EXPECT_NEAR(std::stod(table[1][1]), 0.625, 1e-12);
  const auto heat = run({"absorb", data("duality.tsv"), "--undirected", "--boundary",
                         data("duality_boundary.tsv")});
  ASSERT_EQ(heat.code, 0) << heat.err;
  table = rows(heat.out);
  ASSERT_EQ(table.size(), 5u);
  EXPECT_EQ(table[1][0], "X");
  EXPECT_NEAR(std::stod(table[1][1]), 0.625, 1e-10);
}

TEST(Cli, EvaluateNeedsSeed) {
  EXPECT_EQ(run({"evaluate", data("probs.tsv")}).code, walkrank::cli::kExitInput);
  const auto r = run({"evaluate", data("probs.tsv"), "--seed", "3", "--probe", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["kind"], "evaluation");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"rank", data("fig1.tsv"), "--no-such-flag"}).code, walkrank::cli::kExitInput);
  EXPECT_EQ(run({"frobnicate"}).code, walkrank::cli::kExitInput);
  EXPECT_EQ(run({"rank", "/nonexistent/graph.tsv"}).code, walkrank::cli::kExitInput);
  EXPECT_EQ(run({"rank", data("fig1.tsv"), "--alpha", "1.5"}).code, walkrank::cli::kExitInput);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const std::vector<std::string> args{"centrality", data("centrality.tsv"), "--undirected", "--measure",
                                      "second-order", "--seed", "4", "--steps", "200000"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const std::vector<std::string> threaded{"--threads", "4", "rank", data("fig1.tsv")};
  EXPECT_EQ(run(threaded).out, run({"rank", data("fig1.tsv")}).out);
}
