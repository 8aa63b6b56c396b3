#include "hilbgw/cache.hpp"
#include "hilbgw/hyperelliptic.hpp"
#include "hilbgw/targets.hpp"

#include <gtest/gtest.h>

using namespace hilbgw;

namespace {

std::string warm_export() {
  Engine e(hilb2_datum());
  invert_counts(e, 4, 0);
  invert_counts(e, 3, 1);
  return export_cache(e);
}

std::string one_entry(const std::string& body, const std::string& target = "hilb2p2") {
  return R"({"target": ")" + target + R"(", "entries": [)" + body + "]}";
}

}  // namespace

TEST(Cache, RoundTripIsByteIdentical) {
  const std::string first = warm_export();
  Engine loaded(hilb2_datum());
  const std::size_t n = import_cache(loaded, first);
  EXPECT_GT(n, 100u);
  EXPECT_EQ(export_cache(loaded), first);
  EXPECT_TRUE(verify_loaded_entries(loaded).empty());
}

TEST(Cache, LoadedValuesAreUsed) {
  const std::string text = warm_export();
  Engine loaded(hilb2_datum());
  import_cache(loaded, text);
  const std::size_t before = loaded.memo().size();
  EXPECT_EQ(invert_counts(loaded, 4, 0).rows[2].count, 27);
  EXPECT_EQ(loaded.memo().size(), before);
  EXPECT_TRUE(loaded.reports().empty());
}

TEST(Cache, ExportIsSortedAndCanonical) {
  const auto doc = nlohmann::json::parse(warm_export());
  EXPECT_EQ(doc["target"], "hilb2p2");
  std::vector<InvariantKey> keys;
  for (const auto& e : doc["entries"]) {
    keys.push_back(InvariantKey::from_insertions({e["a"].get<int>(), e["b"].get<int>()}, e["ins"].get<std::vector<int>>()));
    const Rational q = parse_rational(e["num"].get<std::string>() + "/" + e["den"].get<std::string>());
    EXPECT_EQ(q.get_den().get_str(), e["den"].get<std::string>());
  }
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
}

TEST(Cache, RejectsSchemaViolations) {
  Engine e(hilb2_datum());
  EXPECT_THROW(import_cache(e, "not json"), CacheError);
  EXPECT_THROW(import_cache(e, "[]"), CacheError);
  EXPECT_THROW(import_cache(e, one_entry("", "p2")), CacheError);
  // missing field
  EXPECT_THROW(import_cache(e, one_entry(R"({"a":1,"b":1,"ins":[6,7],"num":"2"})")), CacheError);
  // wrong type
  EXPECT_THROW(import_cache(e, one_entry(R"({"a":1,"b":1,"ins":[6,7],"num":2,"den":"1"})")), CacheError);
  // divisor insertion
  EXPECT_THROW(import_cache(e, one_entry(R"({"a":1,"b":1,"ins":[1,6,7],"num":"2","den":"1"})")), CacheError);
  // unsorted
  EXPECT_THROW(import_cache(e, one_entry(R"({"a":1,"b":1,"ins":[7,6],"num":"2","den":"1"})")), CacheError);
  // dimension
  EXPECT_THROW(import_cache(e, one_entry(R"({"a":1,"b":1,"ins":[6,6,7],"num":"2","den":"1"})")), CacheError);
  // zero class
  EXPECT_THROW(import_cache(e, one_entry(R"({"a":0,"b":0,"ins":[8],"num":"0","den":"1"})")), CacheError);
  // malformed rational
  EXPECT_THROW(import_cache(e, one_entry(R"({"a":1,"b":1,"ins":[6,7],"num":"2","den":"0"})")), CacheError);
  // contradicts a base case
  EXPECT_THROW(import_cache(e, one_entry(R"({"a":1,"b":1,"ins":[6,7],"num":"3","den":"1"})")), CacheError);
  EXPECT_EQ(e.memo().size(), 0u);
}

TEST(Cache, VerifyCatchesWrongSolvedValue) {
  Engine e(hilb2_datum());
  import_cache(e, one_entry(R"({"a":1,"b":4,"ins":[4,4,4,4,4,4,4,4,4,4,4,4,4],"num":"28","den":"1"})"));
  const auto bad = verify_loaded_entries(e);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0].cls, (CurveClass{1, 4}));
}
