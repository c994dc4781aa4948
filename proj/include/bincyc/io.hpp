#pragma once

// Record serialization (CSV and JSON, byte-deterministic: floats at 17
// significant digits) and the binary prime cache.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bincyc/arith.hpp"
#include "bincyc/counting.hpp"
#include "bincyc/cyclotomic.hpp"
#include "bincyc/equidist.hpp"
#include "bincyc/expsums.hpp"

namespace bincyc {

class cache_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline const char* fmt_bool(bool b) { return b ? "true" : "false"; }

namespace detail {

// Tiny row builder shared by the CSV and JSON emitters.
struct Row {
  std::vector<std::pair<std::string, std::string>> cells;  // name, rendered value
  std::vector<bool> quoted;

  void add(const std::string& k, const std::string& v, bool quote) {
    cells.emplace_back(k, v);
    quoted.push_back(quote);
  }
  void num(const std::string& k, double v) { add(k, fmt_double(v), false); }
  void num(const std::string& k, u64 v) { add(k, std::to_string(v), false); }
  void flag(const std::string& k, bool v) { add(k, fmt_bool(v), false); }
  void str(const std::string& k, const std::string& v) { add(k, v, true); }
};

template <class T, class Fill>
std::string rows_to_csv(const std::vector<T>& recs, Fill fill) {
  std::string out;
  Row header;
  fill(T{}, header);
  for (std::size_t i = 0; i < header.cells.size(); ++i) {
    if (i) out += ',';
    out += header.cells[i].first;
  }
  out += '\n';
  for (const T& r : recs) {
    Row row;
    fill(r, row);
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      if (i) out += ',';
      out += row.cells[i].second;
    }
    out += '\n';
  }
  return out;
}

template <class T, class Fill>
std::string rows_to_json(const std::vector<T>& recs, Fill fill) {
  std::string out = "[";
  for (std::size_t n = 0; n < recs.size(); ++n) {
    Row row;
    fill(recs[n], row);
    out += n ? ",\n " : "\n ";
    out += '{';
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      if (i) out += ',';
      out += '"';
      out += row.cells[i].first;
      out += "\":";
      if (row.quoted[i]) {
        out += '"';
        out += row.cells[i].second;
        out += '"';
      } else {
        out += row.cells[i].second;
      }
    }
    out += '}';
  }
  out += "\n]\n";
  return out;
}

inline void fill_count(const CountRecord& r, Row& row) {
  row.num("x", r.x);
  row.num("gamma", r.gamma);
  row.num("h_exact", r.h_exact);
  row.num("h_predicted", r.h_predicted);
  row.num("ratio", r.ratio);
  row.num("pairs_scanned", r.pairs_scanned);
  row.num("elapsed", r.elapsed);
}

inline void fill_box_check(const BoxCheck& r, Row& row) {
  row.num("p", r.box.p_lo);
  row.num("q", r.box.q_lo);
  row.num("r_count", r.r_count);
  row.num("r_gamma_count", r.r_gamma_count);
  row.num("main_term", r.main_term);
  row.num("rel_dev", r.rel_dev);
  row.str("rho_mode", rho_mode_name(r.rho_mode));
  row.str("range_class", range_class_name(r.box.range_class));
  row.flag("cond1", r.cond1);
  row.flag("cond2", r.cond2);
  row.num("band_hits", r.band_hits);
}

inline void fill_discrepancy(const DiscrepancyReport& r, Row& row) {
  row.num("p", r.box.p_lo);
  row.num("q", r.box.q_lo);
  row.num("n", r.n);
  row.num("d_star", r.d_star);
  row.num("a_parameter", r.a_parameter);
  row.num("et_bound", r.et_bound);
}

inline void fill_bound(const BoundReport& r, Row& row) {
  row.str("kind", r.kind);
  row.num("p", r.p);
  row.num("p_anchor", r.p_anchor);
  row.num("q_anchor", r.q_anchor);
  row.num("y", r.y);
  row.num("z", r.z);
  row.num("a_count", r.a_count);
  row.flag("sampled", r.sampled);
  row.num("terms", r.terms);
  row.num("observed", r.observed);
  row.num("reference", r.reference);
  row.num("ratio", r.ratio);
}

inline void fill_pair(const PrimePair& r, Row& row) {
  row.num("p", r.p);
  row.num("q", r.q);
  row.num("inv_q_mod_p", r.inv_q_mod_p);
  row.num("inv_p_mod_q", r.inv_p_mod_q);
  row.num("theta", r.theta);
}

}  // namespace detail

inline std::string to_csv(const std::vector<CountRecord>& v) {
  return detail::rows_to_csv(v, detail::fill_count);
}
inline std::string to_json(const std::vector<CountRecord>& v) {
  return detail::rows_to_json(v, detail::fill_count);
}
inline std::string to_csv(const std::vector<BoxCheck>& v) {
  return detail::rows_to_csv(v, detail::fill_box_check);
}
inline std::string to_json(const std::vector<BoxCheck>& v) {
  return detail::rows_to_json(v, detail::fill_box_check);
}
inline std::string to_csv(const std::vector<DiscrepancyReport>& v) {
  return detail::rows_to_csv(v, detail::fill_discrepancy);
}
inline std::string to_json(const std::vector<DiscrepancyReport>& v) {
  return detail::rows_to_json(v, detail::fill_discrepancy);
}
inline std::string to_csv(const std::vector<BoundReport>& v) {
  return detail::rows_to_csv(v, detail::fill_bound);
}
inline std::string to_json(const std::vector<BoundReport>& v) {
  return detail::rows_to_json(v, detail::fill_bound);
}
inline std::string to_csv(const std::vector<PrimePair>& v) {
  return detail::rows_to_csv(v, detail::fill_pair);
}
inline std::string to_json(const std::vector<PrimePair>& v) {
  return detail::rows_to_json(v, detail::fill_pair);
}

// Minimal CSV reader for round-trip checks: header plus unquoted cells.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

inline std::vector<CountRecord> count_records_from_csv(const std::string& text) {
  auto rows = parse_csv(text);
  if (rows.empty()) throw std::invalid_argument("count_records_from_csv: missing header");
  std::vector<CountRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& c = rows[i];
    if (c.size() != 7) throw std::invalid_argument("count_records_from_csv: bad row width");
    CountRecord r{};
    r.x = std::stod(c[0]);
    r.gamma = std::stod(c[1]);
    r.h_exact = std::stoull(c[2]);
    r.h_predicted = std::stod(c[3]);
    r.ratio = std::stod(c[4]);
    r.pairs_scanned = std::stoull(c[5]);
    r.elapsed = std::stod(c[6]);
    out.push_back(r);
  }
  return out;
}

// ---- binary prime cache -------------------------------------------------
// "BCPC" | u32 version = 1 | u64 limit | u64 count | count * u64 primes,
// everything little-endian. The limit-10 file is exactly 56 bytes.

inline constexpr u32 prime_cache_version = 1;

namespace detail {

inline void put_u32(std::string& s, u32 v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline void put_u64(std::string& s, u64 v) {
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline u32 get_u32(const std::string& s, std::size_t off) {
  u32 v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<u32>(static_cast<unsigned char>(s[off + i])) << (8 * i);
  return v;
}
inline u64 get_u64(const std::string& s, std::size_t off) {
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<u64>(static_cast<unsigned char>(s[off + i])) << (8 * i);
  return v;
}

}  // namespace detail

inline std::string prime_cache_bytes(const PrimeTable& t) {
  std::string s;
  s.reserve(24 + 8 * t.primes.size());
  s += "BCPC";
  detail::put_u32(s, prime_cache_version);
  detail::put_u64(s, t.limit);
  detail::put_u64(s, static_cast<u64>(t.primes.size()));
  for (u64 p : t.primes) detail::put_u64(s, p);
  return s;
}

inline void write_prime_cache(const std::string& path, const PrimeTable& t) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw cache_error("prime cache: cannot open " + path + " for writing");
  const std::string bytes = prime_cache_bytes(t);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw cache_error("prime cache: short write to " + path);
}

inline PrimeTable prime_cache_from_bytes(const std::string& s) {
  if (s.size() < 24 || s.compare(0, 4, "BCPC") != 0)
    throw cache_error("prime cache: magic mismatch");
  if (detail::get_u32(s, 4) != prime_cache_version)
    throw cache_error("prime cache: version mismatch (got " +
                      std::to_string(detail::get_u32(s, 4)) + ")");
  PrimeTable t;
  t.limit = detail::get_u64(s, 8);
  const u64 count = detail::get_u64(s, 16);
  if (s.size() != 24 + 8 * count)
    throw cache_error("prime cache: count mismatch (header says " + std::to_string(count) +
                      ", payload holds " + std::to_string((s.size() - 24) / 8) + ")");
  t.primes.resize(count);
  u64 prev = 0;
  for (u64 i = 0; i < count; ++i) {
    const u64 p = detail::get_u64(s, 24 + 8 * i);
    if (p <= prev) throw cache_error("prime cache: order violation at index " + std::to_string(i));
    if (p > t.limit) throw cache_error("prime cache: prime exceeds stated limit");
    t.primes[i] = p;
    prev = p;
  }
  return t;
}

inline PrimeTable read_prime_cache(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw cache_error("prime cache: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return prime_cache_from_bytes(ss.str());
}

// Cache-aware table: load <dir>/primes_<limit>.bcpc when present and valid,
// otherwise build and (best effort) store.
inline PrimeTable load_or_build_primes(u64 limit, const std::string& dir) {
  if (dir.empty()) return PrimeTable::build(limit);
  const std::string path = dir + "/primes_" + std::to_string(limit) + ".bcpc";
  {
    std::ifstream probe(path, std::ios::binary);
    if (probe) {
      PrimeTable t = read_prime_cache(path);
      if (t.limit != limit) throw cache_error("prime cache: limit mismatch in " + path);
      return t;
    }
  }
  PrimeTable t = PrimeTable::build(limit);
  try {
    write_prime_cache(path, t);
  } catch (const cache_error&) {
    // cache directory may be read-only; the table is still usable
  }
  return t;
}

}  // namespace bincyc
