#include "hilbgw/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace hilbgw;
using namespace hilbgw::cli;

namespace {

struct Harness {
  Engine engine{hilb2_datum()};
  std::ostringstream out;
  std::ostringstream err;
  Context ctx(Format f = Format::text) { return Context{engine, out, err, 1, f, false, false}; }
};

}  // namespace

TEST(CliParse, Class) {
  EXPECT_EQ(parse_class("1,4"), (CurveClass{1, 4}));
  EXPECT_THROW(parse_class("0,0"), UsageError);
  EXPECT_THROW(parse_class("-1,2"), UsageError);
  EXPECT_THROW(parse_class("1"), UsageError);
  EXPECT_THROW(parse_class("1,x"), UsageError);
}

TEST(CliParse, Insertions) {
  EXPECT_EQ(parse_insertions("3,8", 9), (std::vector<int>{3, 8}));
  EXPECT_EQ(parse_insertions("4x3,8", 9), (std::vector<int>{4, 4, 4, 8}));
  EXPECT_EQ(parse_insertions("4^2", 9), (std::vector<int>{4, 4}));
  EXPECT_EQ(parse_insertions("4×13", 9), std::vector<int>(13, 4));
  EXPECT_THROW(parse_insertions("9", 9), UsageError);
  EXPECT_THROW(parse_insertions("3,,4", 9), UsageError);
}

TEST(CliCommands, Invariant) {
  Harness h;
  auto ctx = h.ctx();
  EXPECT_EQ(cmd_invariant(ctx, {1, 4}, std::vector<int>(13, 4)), exit_code::ok);
  EXPECT_EQ(h.out.str(), "I(1,4)(T4^13) = 27\n");
}

TEST(CliCommands, InvariantJson) {
  Harness h;
  auto ctx = h.ctx(Format::json);
  EXPECT_EQ(cmd_invariant(ctx, {1, 1}, {7, 6}), exit_code::ok);
  const auto doc = nlohmann::json::parse(h.out.str());
  EXPECT_EQ(doc["schema_version"], kSchemaVersion);
  EXPECT_EQ(doc["command"], "invariant");
  EXPECT_EQ(doc["args"]["insertions"], (std::vector<int>{6, 7}));
  EXPECT_EQ(doc["result"]["value"], "2");
  EXPECT_FALSE(doc.contains("elapsed_ms"));
}

TEST(CliCommands, FloatIsMarked) {
  Harness h;
  auto ctx = h.ctx(Format::json);
  ctx.approximate = true;
  EXPECT_EQ(cmd_invariant(ctx, {3, 0}, {3}), exit_code::ok);
  const auto doc = nlohmann::json::parse(h.out.str());
  EXPECT_EQ(doc["result"]["value"]["exact"], "1/3");
  EXPECT_NEAR(doc["result"]["value"]["approximate"].get<double>(), 1.0 / 3, 1e-15);
}

TEST(CliCommands, HyperellipticCsv) {
  Harness h;
  auto ctx = h.ctx(Format::csv);
  EXPECT_EQ(cmd_hyperelliptic(ctx, 3, 1), exit_code::ok);
  EXPECT_EQ(h.out.str(), "d,l,g,a,b,I,E\n3,1,0,2,3,4,0\n3,1,1,1,3,1,1\n3,1,2,0,3,0,0\n");
}

TEST(CliCommands, HyperellipticRanges) {
  Harness h;
  auto ctx = h.ctx();
  EXPECT_EQ(guarded(ctx, [&] { return cmd_hyperelliptic(ctx, 1, 0); }), exit_code::usage);
  EXPECT_EQ(guarded(ctx, [&] { return cmd_hyperelliptic(ctx, 3, 4); }), exit_code::usage);
}

TEST(CliCommands, TablesPass) {
  Harness h;
  auto ctx = h.ctx(Format::json);
  EXPECT_EQ(cmd_tables(ctx, 4), exit_code::ok);
  const auto doc = nlohmann::json::parse(h.out.str());
  EXPECT_EQ(doc["result"]["status"], "PASS");
  EXPECT_EQ(doc["result"]["tables"].size(), 6u);
  EXPECT_EQ(doc["result"]["tables"][0]["columns"].size(), 3u);
}

TEST(CliCommands, TamperedFixtureFails) {
  std::array<PublishedTable, 6> tampered = kPublishedTables;
  tampered[1].cells[2][2] = "28";  // E(4,2)
  Harness h;
  auto ctx = h.ctx();
  EXPECT_EQ(cmd_tables(ctx, 4, tampered), exit_code::mismatch);
  EXPECT_NE(h.out.str().find("d=4 g=2: expected 28, computed 27"), std::string::npos) << h.out.str();
  EXPECT_NE(h.err.str().find("d=4 g=2"), std::string::npos);
}

TEST(CliCommands, TablesDegreeRange) {
  Harness h;
  auto ctx = h.ctx();
  EXPECT_EQ(guarded(ctx, [&] { return cmd_tables(ctx, 8); }), exit_code::usage);
}

TEST(CliCommands, Qcoh) {
  Harness h;
  auto ctx = h.ctx(Format::json);
  EXPECT_EQ(cmd_qcoh(ctx, 4, 2), exit_code::ok);
  const auto doc = nlohmann::json::parse(h.out.str());
  EXPECT_EQ(doc["result"]["products"].size(), 9u);
  EXPECT_EQ(doc["result"]["relations"][0]["residual"], "0");
  EXPECT_EQ(doc["result"]["relations"][1]["residual"], "0");
}

TEST(CliCommands, Oracle) {
  Harness h;
  auto ctx = h.ctx();
  EXPECT_EQ(cmd_oracle(ctx, 6, false), exit_code::ok);
  EXPECT_EQ(h.out.str(), "N_6 = 26312976\n");
}

TEST(CliCommands, Datum) {
  Harness h;
  auto ctx = h.ctx();
  EXPECT_EQ(cmd_datum(ctx, "hilb2p2"), exit_code::ok);
  const auto doc = nlohmann::json::parse(h.out.str());
  EXPECT_EQ(doc["result"]["cup"]["T1*T2"], "2T3 + T4");
  EXPECT_EQ(guarded(ctx, [&] { return cmd_datum(ctx, "p1"); }), exit_code::usage);
}

TEST(CliCommands, OutputIsDeterministicAcrossThreads) {
  std::string outputs[2];
  for (unsigned threads : {1u, 4u}) {
    Harness h;
    auto ctx = h.ctx(Format::json);
    ctx.threads = threads;
    EXPECT_EQ(cmd_hyperelliptic(ctx, 5, 0), exit_code::ok);
    outputs[threads == 1 ? 0 : 1] = h.out.str();
  }
  EXPECT_EQ(outputs[0], outputs[1]);
}
