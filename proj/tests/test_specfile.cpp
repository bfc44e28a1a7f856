#include "hetdss/specfile.hpp"

#include <gtest/gtest.h>

using namespace hetdss;

namespace {

const char* kTwoNodes = R"({
  "file_size": 1,
  "storage_cost": [1, 2],
  "download_cost": [3, 4],
  "reconstruction_sets": [[0]],
  "surviving_sets": [[[1]], [[0]]]
})";

bool mentions(const SpecError& e, const std::string& needle) {
  for (const auto& d : e.diagnostics()) {
    if (d.find(needle) != std::string::npos) return true;
  }
  return false;
}

SpecError error_of(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return SpecError({});
}

}  // namespace

TEST(SpecFile, FixtureRoundTrip) {
  const Fixture f = paper_fixture();
  const std::string text = serialize_spec(f.spec, &f.assignment);
  const SpecDocument doc = parse_spec(text);
  EXPECT_EQ(doc.spec, f.spec);
  ASSERT_TRUE(doc.assignment);
  EXPECT_EQ(*doc.assignment, f.assignment);
  EXPECT_EQ(serialize_spec(doc.spec, &*doc.assignment), text);
}

TEST(SpecFile, FractionsSerializeAsStrings) {
  const Fixture f = paper_fixture();
  Assignment a = f.assignment;
  a.alpha[0] = Rational(5, 2);
  const std::string text = serialize_spec(f.spec, &a);
  EXPECT_NE(text.find("\"5/2\""), std::string::npos) << text;
  EXPECT_EQ(parse_spec(text).assignment->alpha[0], Rational(5, 2));
}

TEST(SpecFile, BundledFixtureMatchesBuiltIn) {
  const SpecDocument doc = load_spec(std::filesystem::path(HETDSS_DATA_DIR) / "fig2.json");
  const Fixture f = paper_fixture();
  EXPECT_EQ(doc.spec, f.spec);
  EXPECT_EQ(doc.assignment, f.assignment);
  EXPECT_TRUE(doc.warnings.empty());
}

TEST(SpecFile, NumberForms) {
  std::string text = kTwoNodes;
  text.replace(text.find("\"file_size\": 1"), 14, "\"file_size\": 0.1");
  EXPECT_EQ(parse_spec(text).spec.file_size, Rational(1, 10));
  text.replace(text.find("0.1"), 3, "\"7/14\"");
  EXPECT_EQ(parse_spec(text).spec.file_size, Rational(1, 2));
}

TEST(SpecFile, NoAssignmentWithoutAlphas) {
  const SpecDocument doc = parse_spec(kTwoNodes);
  EXPECT_FALSE(doc.assignment);
  EXPECT_EQ(doc.spec.node_count, 2U);
}

TEST(SpecFile, MissingBetasDefaultToZero) {
  std::string text = kTwoNodes;
  text.insert(text.rfind('}'), ", \"alphas\": [1, \"1/3\"]");
  const SpecDocument doc = parse_spec(text);
  ASSERT_TRUE(doc.assignment);
  EXPECT_EQ(doc.assignment->alpha[1], Rational(1, 3));
  EXPECT_EQ(doc.assignment->beta, (std::vector<Rational>{0, 0}));
}

TEST(SpecFile, SyntaxErrorsCarryPosition) {
  const SpecError e = error_of("{\n  \"file_size\": 1,\n  oops\n}");
  EXPECT_TRUE(mentions(e, "line 3, column 3")) << e.what();
}

TEST(SpecFile, FieldLevelDiagnostics) {
  EXPECT_TRUE(mentions(error_of("[]"), "top level"));
  EXPECT_TRUE(mentions(error_of("{}"), "file_size: missing"));

  std::string text = kTwoNodes;
  text.replace(text.find("[[[1]], [[0]]]"), 14, "[[[1]], [[7]]]");
  EXPECT_TRUE(mentions(error_of(text), "surviving_sets[1][0][0]"));

  text = kTwoNodes;
  text.replace(text.find("[3, 4]"), 6, "[3, \"x\"]");
  EXPECT_TRUE(mentions(error_of(text), "download_cost[1]"));

  text = kTwoNodes;
  text.replace(text.find("[3, 4]"), 6, "[3]");
  EXPECT_TRUE(mentions(error_of(text), "download_cost: has 1 entries"));
}

TEST(SpecFile, AssignmentDiagnostics) {
  std::string text = kTwoNodes;
  text.insert(text.rfind('}'), ", \"betas\": []");
  EXPECT_TRUE(mentions(error_of(text), "betas: given without alphas"));

  text = kTwoNodes;
  text.insert(text.rfind('}'),
              ", \"alphas\": [1, -1], \"betas\": [{\"node\": 0, \"set\": 0, \"helper\": 1, \"amount\": 1},"
              " {\"node\": 0, \"set\": 0, \"helper\": 1, \"amount\": 2},"
              " {\"node\": 1, \"set\": 0, \"helper\": 1, \"amount\": 1}]");
  const SpecError e = error_of(text);
  EXPECT_TRUE(mentions(e, "alphas[1]: must be nonnegative"));
  EXPECT_TRUE(mentions(e, "betas[1]: duplicate"));
  EXPECT_TRUE(mentions(e, "betas[2].helper"));
}

TEST(SpecFile, UnknownKeysWarn) {
  std::string text = kTwoNodes;
  text.insert(text.rfind('}'), ", \"comment\": \"hi\"");
  const SpecDocument doc = parse_spec(text);
  ASSERT_EQ(doc.warnings.size(), 1U);
  EXPECT_NE(doc.warnings[0].find("comment"), std::string::npos);
}

TEST(SpecFile, PrunedSetDropsItsBetas) {
  // {1, 2} contains {1} and is dropped
  const std::string text = R"({
    "file_size": 1,
    "storage_cost": [1, 1, 1],
    "download_cost": [1, 1, 1],
    "reconstruction_sets": [[0, 1]],
    "surviving_sets": [[[1], [1, 2]], [[0]], [[0]]],
    "alphas": [1, 1, 1],
    "betas": [{"node": 0, "set": 1, "helper": 2, "amount": 1},
              {"node": 0, "set": 0, "helper": 1, "amount": "1/2"}]
  })";
  const SpecDocument doc = parse_spec(text);
  EXPECT_EQ(doc.spec.surviving_sets[0].size(), 1U);
  bool warned = false;
  for (const auto& w : doc.warnings) warned |= w.find("betas[0]") != std::string::npos;
  EXPECT_TRUE(warned);
  EXPECT_EQ(doc.assignment->beta[0], Rational(1, 2));
}

TEST(SpecFile, LoadReportsPath) {
  try {
    load_spec("/nonexistent/spec.json");
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/spec.json"), std::string::npos);
  }
}
