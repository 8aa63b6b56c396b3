#pragma once

// Memo-store persistence:
//   {"target": "<datum name>",
//    "entries": [{"a": int, "b": int, "ins": [int...], "num": "<int>", "den": "<int>"}, ...]}
// Entries are written in canonical key order, so exporting the same store twice
// gives identical bytes.

#include "hilbgw/wdvv_engine.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace hilbgw {

struct CacheError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string export_cache(const Engine& engine) {
  nlohmann::ordered_json doc;
  doc["target"] = engine.datum().name;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [key, entry] : engine.memo().snapshot()) {
    nlohmann::ordered_json e;
    e["a"] = key.cls.a;
    e["b"] = key.cls.b;
    e["ins"] = key.insertions();
    e["num"] = entry.value.get_num().get_str();
    e["den"] = entry.value.get_den().get_str();
    entries.push_back(std::move(e));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(1) + "\n";
}

/// Validates and loads cache text into the engine's memo store. Returns the
/// number of entries read. Each entry must be a canonical admissible key of the
/// engine's target; values that are also base cases, or already in the store,
/// must agree.
inline std::size_t import_cache(Engine& engine, std::string_view text) {
  const TargetDatum& X = engine.datum();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CacheError(std::string("cache is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("target") || !doc.contains("entries") || !doc["target"].is_string() ||
      !doc["entries"].is_array())
    throw CacheError("cache must be an object with string 'target' and array 'entries'");
  if (doc["target"].get<std::string>() != X.name)
    throw CacheError("cache target '" + doc["target"].get<std::string>() + "' does not match '" + X.name + "'");

  std::vector<std::pair<InvariantKey, Rational>> parsed;
  std::size_t index = 0;
  for (const auto& e : doc["entries"]) {
    const std::string where = "entry " + std::to_string(index++);
    if (!e.is_object() || !e.contains("a") || !e.contains("b") || !e.contains("ins") || !e.contains("num") ||
        !e.contains("den"))
      throw CacheError(where + ": missing field");
    if (!e["a"].is_number_integer() || !e["b"].is_number_integer() || !e["ins"].is_array() || !e["num"].is_string() ||
        !e["den"].is_string())
      throw CacheError(where + ": wrong field type");
    const CurveClass cls{e["a"].get<int>(), e["b"].get<int>()};
    if (cls.is_zero() || !X.effective(cls)) throw CacheError(where + ": class " + to_string(cls) + " not effective and nonzero");
    std::vector<int> ins;
    for (const auto& x : e["ins"]) {
      if (!x.is_number_integer()) throw CacheError(where + ": insertion not an integer");
      const int i = x.get<int>();
      if (i < 0 || static_cast<std::size_t>(i) >= X.size() || X.codim[static_cast<std::size_t>(i)] < 2)
        throw CacheError(where + ": insertion " + std::to_string(i) + " is not a non-divisor basis index");
      ins.push_back(i);
    }
    if (!std::is_sorted(ins.begin(), ins.end())) throw CacheError(where + ": insertions not sorted");
    const InvariantKey key = InvariantKey::from_insertions(cls, ins);
    if (!X.admissible(key)) throw CacheError(where + ": " + to_string(key) + " fails the dimension constraint");
    Rational value;
    try {
      value = parse_rational(e["num"].get<std::string>() + "/" + e["den"].get<std::string>());
    } catch (const std::invalid_argument& err) {
      throw CacheError(where + ": " + err.what());
    }
    if (auto bc = engine.base_case(key); bc && *bc != value)
      throw CacheError(where + ": " + to_string(key) + " = " + value.get_str() + " contradicts base case " + bc->get_str());
    if (const auto* have = engine.memo().find(key); have && have->value != value)
      throw CacheError(where + ": " + to_string(key) + " conflicts with stored value " + have->value.get_str());
    parsed.emplace_back(key, std::move(value));
  }
  for (const auto& [key, value] : parsed)
    engine.memo().insert(key, value, engine.base_case(key) ? Provenance::base_case : Provenance::loaded);
  return parsed.size();
}

/// Recomputes every loaded entry of `engine` from scratch and returns the keys
/// whose stored value disagrees.
inline std::vector<InvariantKey> verify_loaded_entries(const Engine& engine) {
  Engine fresh(engine.datum());
  std::vector<InvariantKey> bad;
  for (const auto& [key, entry] : engine.memo().snapshot())
    if (entry.provenance == Provenance::loaded && fresh.invariant(key) != entry.value) bad.push_back(key);
  return bad;
}

inline void save_cache_file(const Engine& engine, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CacheError("cannot write " + path);
  out << export_cache(engine);
}

inline std::size_t load_cache_file(Engine& engine, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return import_cache(engine, ss.str());
}

}  // namespace hilbgw
