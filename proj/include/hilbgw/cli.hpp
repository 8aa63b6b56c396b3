#pragma once

// Command implementations behind the hilbgw tool. Each command writes text,
// CSV or a versioned JSON record to the given stream and returns an exit code.

#include "hilbgw/cache.hpp"
#include "hilbgw/hyperelliptic.hpp"
#include "hilbgw/oracles.hpp"
#include "hilbgw/quantum_ring.hpp"
#include "hilbgw/reference_tables.hpp"
#include "hilbgw/targets.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <iomanip>
#include <ostream>

namespace hilbgw::cli {

inline constexpr int kSchemaVersion = 1;

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int engine_failure = 1;
inline constexpr int usage = 2;
inline constexpr int count_sanity = 3;
inline constexpr int mismatch = 4;
}  // namespace exit_code

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Format { text, json, csv };

struct Context {
  Engine& engine;  // Hilb^2(P^2)
  std::ostream& out;
  std::ostream& err;
  unsigned threads = 1;
  Format format = Format::text;
  bool approximate = false;
  bool timing = false;
};

using Json = nlohmann::ordered_json;

inline int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end) throw UsageError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

/// "a,b" with a, b >= 0 and not both zero.
inline CurveClass parse_class(std::string_view s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw UsageError("class must be given as a,b");
  const CurveClass c{parse_int(parts[0], "class"), parse_int(parts[1], "class")};
  if (c.a < 0 || c.b < 0 || c.is_zero()) throw UsageError("class must be effective and nonzero");
  return c;
}

/// Comma-separated basis indices; "4x13" (or "4^13", "4×13") stands for 13 copies of 4.
inline std::vector<int> parse_insertions(std::string_view text, std::size_t basis) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::string s(text);
  for (std::size_t pos; (pos = s.find("\u00d7")) != std::string::npos;) s.replace(pos, 2, "x");
  for (auto part : split(s, ',')) {
    const auto rep = part.find_first_of("x^");
    const int idx = parse_int(part.substr(0, rep), "insertion");
    const int count = rep == std::string_view::npos ? 1 : parse_int(part.substr(rep + 1), "repeat count");
    if (idx < 0 || static_cast<std::size_t>(idx) >= basis)
      throw UsageError("insertion index " + std::to_string(idx) + " outside 0.." + std::to_string(basis - 1));
    if (count < 0 || count > 255) throw UsageError("repeat count out of range");
    out.insert(out.end(), static_cast<std::size_t>(count), idx);
  }
  return out;
}

inline Json rational_json(const Rational& q, bool approximate) {
  Json j = q.get_str();
  if (!approximate) return j;
  Json o;
  o["exact"] = q.get_str();
  o["approximate"] = q.get_d();
  return o;
}

inline std::string rational_text(const Rational& q, bool approximate) {
  if (!approximate) return q.get_str();
  std::ostringstream os;
  os << q.get_str() << "  (approx. " << std::setprecision(10) << q.get_d() << ")";
  return os.str();
}

inline std::string insertion_label(const std::vector<int>& ins) {
  std::string s;
  for (std::size_t i = 0; i < ins.size();) {
    std::size_t j = i;
    while (j < ins.size() && ins[j] == ins[i]) ++j;
    if (!s.empty()) s += ",";
    s += "T" + std::to_string(ins[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

class Record {
 public:
  Record(const Context& ctx, std::string command, Json args)
      : ctx_(ctx), start_(std::chrono::steady_clock::now()) {
    doc_["schema_version"] = kSchemaVersion;
    doc_["command"] = std::move(command);
    doc_["args"] = std::move(args);
  }
  Json& result() { return doc_["result"]; }
  void emit() {
    if (ctx_.timing)
      doc_["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    ctx_.out << doc_.dump(2) << "\n";
  }
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  const Context& ctx_;
  std::chrono::steady_clock::time_point start_;
  Json doc_;
};

inline void text_timing(const Context& ctx, const Record& rec) {
  if (ctx.timing) ctx.out << "elapsed: " << std::fixed << std::setprecision(1) << rec.elapsed_ms() << " ms\n";
}

inline int cmd_invariant(const Context& ctx, const CurveClass& cls, const std::vector<int>& insertions) {
  std::vector<int> sorted = insertions;
  std::sort(sorted.begin(), sorted.end());
  Record rec(ctx, "invariant", Json{{"class", {cls.a, cls.b}}, {"insertions", sorted}});
  const Rational v = ctx.engine.invariant(cls, insertions);
  if (ctx.format == Format::json) {
    rec.result()["value"] = rational_json(v, ctx.approximate);
    rec.emit();
  } else {
    ctx.out << "I" << to_string(cls) << "(" << insertion_label(sorted) << ") = " << rational_text(v, ctx.approximate) << "\n";
    text_timing(ctx, rec);
  }
  return exit_code::ok;
}

inline int cmd_hyperelliptic(const Context& ctx, int d, int l) {
  if (d < 2) throw UsageError("degree must be at least 2");
  if (l < 0 || l > d) throw UsageError("pairs must lie in 0..degree");
  Record rec(ctx, "hyperelliptic", Json{{"degree", d}, {"pairs", l}});
  const CountTable table = invert_counts(ctx.engine, d, l, ctx.threads);
  switch (ctx.format) {
    case Format::json: {
      Json rows = Json::array();
      for (const auto& r : table.rows) {
        const CurveClass c = genus_to_class(d, r.g);
        rows.push_back(Json{{"g", r.g},
                            {"class", {c.a, c.b}},
                            {"I", rational_json(r.invariant, ctx.approximate)},
                            {"E", r.count.get_str()}});
      }
      rec.result()["rows"] = std::move(rows);
      rec.emit();
      break;
    }
    case Format::csv:
      ctx.out << "d,l,g,a,b,I,E\n";
      for (const auto& r : table.rows) {
        const CurveClass c = genus_to_class(d, r.g);
        ctx.out << d << "," << l << "," << r.g << "," << c.a << "," << c.b << "," << r.invariant.get_str() << ","
                << r.count.get_str() << "\n";
      }
      break;
    case Format::text:
      ctx.out << "degree " << d << ", " << l << " conjugate pair(s)\n";
      ctx.out << std::left << std::setw(4) << "g" << std::setw(10) << "class" << std::setw(20) << "I" << "E\n";
      for (const auto& r : table.rows)
        ctx.out << std::left << std::setw(4) << r.g << std::setw(10) << to_string(genus_to_class(d, r.g)) << std::setw(20)
                << rational_text(r.invariant, ctx.approximate) << r.count.get_str() << "\n";
      text_timing(ctx, rec);
      break;
  }
  return exit_code::ok;
}

struct TableMismatch {
  std::string_view table;
  int d;
  int g;
  std::string expected;
  std::string computed;
};

/// Regenerates the published tables for d = 2..max_degree and compares every
/// printed cell. Returns the first mismatch, if any, plus the computed data.
struct TableRun {
  std::vector<std::vector<CountTable>> by_pairs;  // [l][d-2]
  std::optional<TableMismatch> mismatch;
  std::size_t cells_checked = 0;
};

inline TableRun run_tables(Engine& engine, int max_degree, std::span<const PublishedTable> tables, unsigned threads) {
  TableRun run;
  run.by_pairs.resize(3);
  for (int l = 0; l <= 2; ++l)
    for (int d = 2; d <= max_degree; ++d) run.by_pairs[static_cast<std::size_t>(l)].push_back(invert_counts(engine, d, l, threads));
  for (const auto& t : tables)
    for (int d = 2; d <= max_degree; ++d)
      for (int g = 0; g < 6; ++g) {
        const std::string_view want = t.cell(d, g);
        if (want == "*") continue;
        const auto& row = run.by_pairs[static_cast<std::size_t>(t.pairs)][static_cast<std::size_t>(d - 2)].rows[static_cast<std::size_t>(g)];
        const std::string got = t.counts ? row.count.get_str() : row.invariant.get_str();
        ++run.cells_checked;
        if (got != want && !run.mismatch) run.mismatch = TableMismatch{t.title, d, g, std::string(want), got};
      }
  return run;
}

inline int cmd_tables(const Context& ctx, int max_degree, std::span<const PublishedTable> tables = kPublishedTables) {
  if (max_degree < 2 || max_degree > 7) throw UsageError("max-degree must lie in 2..7");
  Record rec(ctx, "tables", Json{{"max_degree", max_degree}});
  const TableRun run = run_tables(ctx.engine, max_degree, tables, ctx.threads);

  Json boundary = Json::array();
  for (int l = 0; l <= 2; ++l)
    for (int d = 2; d <= max_degree; ++d) {
      const auto& t = run.by_pairs[static_cast<std::size_t>(l)][static_cast<std::size_t>(d - 2)];
      boundary.push_back(Json{{"l", l}, {"d", d}, {"E(d,d-1)", t.rows.back().count.get_str()}});
    }

  if (ctx.format == Format::json) {
    Json out_tables = Json::array();
    for (const auto& t : tables) {
      Json cols = Json::object();
      for (int d = 2; d <= max_degree; ++d) {
        Json col = Json::array();
        for (const auto& r : run.by_pairs[static_cast<std::size_t>(t.pairs)][static_cast<std::size_t>(d - 2)].rows)
          col.push_back(t.counts ? r.count.get_str() : r.invariant.get_str());
        cols[std::to_string(d)] = std::move(col);
      }
      out_tables.push_back(Json{{"title", t.title}, {"pairs", t.pairs}, {"columns", std::move(cols)}});
    }
    rec.result()["tables"] = std::move(out_tables);
    rec.result()["boundary"] = std::move(boundary);
    rec.result()["cells_checked"] = run.cells_checked;
    rec.result()["status"] = run.mismatch ? "MISMATCH" : "PASS";
    if (run.mismatch) {
      const auto& m = *run.mismatch;
      rec.result()["first_mismatch"] =
          Json{{"table", m.table}, {"d", m.d}, {"g", m.g}, {"expected", m.expected}, {"computed", m.computed}};
    }
    rec.emit();
  } else {
    for (const auto& t : tables) {
      ctx.out << t.title << "\n";
      ctx.out << "  g";
      for (int d = 2; d <= max_degree; ++d) ctx.out << std::right << std::setw(15) << ("d=" + std::to_string(d));
      ctx.out << "\n";
      for (int g = 0; g < max_degree - 1; ++g) {
        ctx.out << std::right << std::setw(3) << g;
        for (int d = 2; d <= max_degree; ++d) {
          if (g > d - 2) {
            ctx.out << std::setw(15) << "*";
            continue;
          }
          const auto& r = run.by_pairs[static_cast<std::size_t>(t.pairs)][static_cast<std::size_t>(d - 2)].rows[static_cast<std::size_t>(g)];
          ctx.out << std::setw(15) << (t.counts ? r.count.get_str() : r.invariant.get_str());
        }
        ctx.out << "\n";
      }
      ctx.out << "\n";
    }
    ctx.out << "boundary row E^l(d,d-1):";
    for (const auto& b : boundary) ctx.out << " " << b["E(d,d-1)"].get<std::string>();
    ctx.out << "\n";
    if (run.mismatch) {
      const auto& m = *run.mismatch;
      ctx.out << "MISMATCH " << m.table << " d=" << m.d << " g=" << m.g << ": expected " << m.expected << ", computed "
              << m.computed << "\n";
    } else {
      ctx.out << "PASS: " << tables.size() << " tables, d=2.." << max_degree << ", " << run.cells_checked << " cells\n";
    }
    text_timing(ctx, rec);
  }
  if (run.mismatch) {
    const auto& m = *run.mismatch;
    ctx.err << "first mismatching cell: " << m.table << " d=" << m.d << " g=" << m.g << "\n";
    return exit_code::mismatch;
  }
  return exit_code::ok;
}

inline int cmd_qcoh(const Context& ctx, int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw UsageError("truncation bounds must be nonnegative");
  Record rec(ctx, "qcoh", Json{{"n1", n1}, {"n2", n2}});
  const ProductReport products = verify_product_table(ctx.engine, n1, n2);
  const auto relations = verify_relations(ctx.engine, n1, n2);
  const bool ok = products.all_pass() &&
                  std::all_of(relations.begin(), relations.end(), [](const RelationCheck& r) { return r.pass; });
  if (ctx.format == Format::json) {
    Json p = Json::array();
    for (const auto& e : products.entries) {
      Json item{{"product", e.name}, {"series", e.actual.str()}, {"pass", e.pass}};
      if (!e.pass) item["first_mismatch"] = e.first_mismatch;
      p.push_back(std::move(item));
    }
    Json r = Json::array();
    for (const auto& e : relations) r.push_back(Json{{"relation", e.name}, {"residual", e.residual.str()}, {"pass", e.pass}});
    rec.result()["products"] = std::move(p);
    rec.result()["relations"] = std::move(r);
    rec.result()["status"] = ok ? "PASS" : "MISMATCH";
    rec.emit();
  } else {
    ctx.out << "small quantum products, truncated at q1^" << n1 << " q2^" << n2 << "\n";
    for (const auto& e : products.entries) {
      ctx.out << "  " << e.name << " = " << e.actual.str() << "  [" << (e.pass ? "PASS" : "FAIL") << "]\n";
      if (!e.pass) ctx.out << "    " << e.first_mismatch << "\n";
    }
    ctx.out << "relations\n";
    for (const auto& e : relations)
      ctx.out << "  " << e.name << "\n    residual = " << e.residual.str() << "  [" << (e.pass ? "PASS" : "FAIL") << "]\n";
    ctx.out << (ok ? "PASS" : "MISMATCH") << "\n";
    text_timing(ctx, rec);
  }
  return ok ? exit_code::ok : exit_code::mismatch;
}

inline int cmd_oracle(const Context& ctx, int d, bool with_engine) {
  if (d < 1) throw UsageError("degree must be positive");
  Record rec(ctx, "oracle", Json{{"nd", d}, {"engine", with_engine}});
  const Integer closed = kontsevich_nd(d);
  std::optional<Rational> wdvv;
  if (with_engine) wdvv = engine_nd(d);
  const bool ok = !wdvv || *wdvv == Rational(closed);
  if (ctx.format == Format::json) {
    rec.result()["N_d"] = closed.get_str();
    if (wdvv) rec.result()["engine"] = wdvv->get_str();
    rec.result()["status"] = ok ? "PASS" : "MISMATCH";
    rec.emit();
  } else {
    ctx.out << "N_" << d << " = " << closed.get_str() << "\n";
    if (wdvv) ctx.out << "engine on P^2: " << wdvv->get_str() << (ok ? "  [PASS]" : "  [MISMATCH]") << "\n";
    text_timing(ctx, rec);
  }
  return ok ? exit_code::ok : exit_code::mismatch;
}

/// Fills the store with the hyperelliptic tables up to warm_degree, then writes it.
inline int cmd_cache_export(const Context& ctx, const std::string& path, int warm_degree) {
  if (warm_degree > 7) throw UsageError("warm-degree must be at most 7");
  for (int d = 2; d <= warm_degree; ++d)
    for (int l = 0; l <= 2; ++l) invert_counts(ctx.engine, d, l, ctx.threads);
  save_cache_file(ctx.engine, path);
  ctx.out << "exported " << ctx.engine.memo().size() << " entries to " << path << "\n";
  return exit_code::ok;
}

inline int cmd_cache_import(const Context& ctx, const std::string& path, const std::string& reexport, bool verify) {
  std::size_t n = 0;
  try {
    n = load_cache_file(ctx.engine, path);
  } catch (const CacheError& e) {
    throw UsageError(e.what());
  }
  ctx.out << "imported " << n << " entries from " << path << "\n";
  if (verify) {
    const auto bad = verify_loaded_entries(ctx.engine);
    if (!bad.empty()) {
      ctx.out << "verification failed at " << to_string(bad.front()) << " (" << bad.size() << " entries)\n";
      return exit_code::mismatch;
    }
    ctx.out << "verified all loaded entries\n";
  }
  if (!reexport.empty()) {
    save_cache_file(ctx.engine, reexport);
    ctx.out << "re-exported to " << reexport << "\n";
  }
  return exit_code::ok;
}

inline Json datum_json(const TargetDatum& X) {
  Json j;
  j["name"] = X.name;
  j["dimension"] = X.dimension;
  j["class_rank"] = X.class_rank;
  j["codim"] = X.codim;
  j["divisors"] = X.divisors;
  j["anticanonical"] = X.anticanonical;
  j["dual"] = X.dual;
  Json cup = Json::object();
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t k = i; k < X.size(); ++k) {
      const CohVector& v = X.cup[i][k];
      if (!v.is_zero()) cup["T" + std::to_string(i) + "*T" + std::to_string(k)] = v.str();
    }
  j["cup"] = std::move(cup);
  Json dec = Json::object();
  for (std::size_t m = 0; m < X.size(); ++m) {
    if (X.codim[m] < 2) continue;
    Json terms = Json::array();
    for (const auto& t : X.decomposition[m]) terms.push_back(Json{{"divisor", t.divisor}, {"lower", t.lower}, {"coeff", t.coeff.get_str()}});
    dec["T" + std::to_string(m)] = std::move(terms);
  }
  j["decomposition"] = std::move(dec);
  return j;
}

inline int cmd_datum(const Context& ctx, const std::string& target) {
  const TargetDatum* X = nullptr;
  if (target == "hilb2p2") X = &hilb2_datum();
  else if (target == "p2") X = &p2_datum();
  else throw UsageError("unknown target '" + target + "' (expected hilb2p2 or p2)");
  Record rec(ctx, "datum", Json{{"target", target}});
  rec.result() = datum_json(*X);
  rec.emit();
  return exit_code::ok;
}

/// Runs a command body, mapping failures onto the exit-code contract.
template <class F>
int guarded(const Context& ctx, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    ctx.err << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const CacheError& e) {
    ctx.err << "cache error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const NonIntegralCount& e) {
    ctx.err << "non-integral count: " << e.what() << "\n";
    return exit_code::count_sanity;
  } catch (const NegativeCount& e) {
    ctx.err << "negative count: " << e.what() << "\n";
    return exit_code::count_sanity;
  } catch (const UnderdeterminedStage& e) {
    ctx.err << "engine failure: " << e.what() << "\n";
    return exit_code::engine_failure;
  } catch (const InconsistentSystem& e) {
    ctx.err << "engine failure: " << e.what() << "\n";
    return exit_code::engine_failure;
  } catch (const std::invalid_argument& e) {
    ctx.err << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  }
}

}  // namespace hilbgw::cli
