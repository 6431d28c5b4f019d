#include "cactus/cli.hpp"

#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;

namespace cactus {

std::vector<int> IntRange::values() const {
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

IntRange parse_range(const std::string& s) {
  IntRange r;
  try {
    size_t colon = s.find(':');
    if (colon == std::string::npos) {
      r.lo = r.hi = std::stoi(s);
    } else {
      r.lo = std::stoi(s.substr(0, colon));
      r.hi = std::stoi(s.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("bad range '" + s + "' (expected N or LO:HI)");
  }
  if (r.hi < r.lo) throw std::invalid_argument("empty range '" + s + "'");
  return r;
}

std::string CacheStore::key(Family f, int n, int degree, const std::string& kind) {
  std::ostringstream os;
  os << family_name(f) << "_n" << n << "_d" << degree << "_" << kind;
  return os.str();
}

std::optional<json> CacheStore::load(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(fs::path(dir_) / (key + ".json"));
  if (!in) return std::nullopt;
  json doc = json::parse(in, nullptr, false);
  // corrupt entries read as missing and get re-derived and overwritten
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
  if (doc.value("engine_version", "") != kEngineVersion) return std::nullopt;
  if (!doc.contains("payload")) return std::nullopt;
  return doc["payload"];
}

void CacheStore::store(const std::string& key, const json& payload) const {
  if (!enabled()) return;
  fs::create_directories(dir_);
  json doc;
  doc["engine_version"] = kEngineVersion;
  doc["key"] = key;
  doc["payload"] = payload;
  fs::path final_path = fs::path(dir_) / (key + ".json");
  std::ostringstream tmpname;
  tmpname << key << ".tmp." << std::this_thread::get_id();
  fs::path tmp_path = fs::path(dir_) / tmpname.str();
  {
    std::ofstream out(tmp_path);
    out << doc.dump(2) << '\n';
  }
  fs::rename(tmp_path, final_path);  // atomic publish
}

namespace {

json character_json(const ClassFunction& chi) {
  json out = json::object();
  for (const auto& [mu, v] : chi.values) out[mu.to_string()] = to_string(v);
  return out;
}

ClassFunction character_from_json(int n, const json& j) {
  ClassFunction chi(n);
  for (const auto& [key, val] : j.items())
    chi[Partition::parse(key)] = parse_rational(val.get<std::string>());
  return chi;
}

json mult_json(const MultiplicityTable& t) {
  json out = json::object();
  for (const auto& [lam, m] : t.mult) out[lam.to_string()] = m;
  return out;
}

// One (family, n, degree) report cell, cache-backed.
json compute_cell(Family f, int n, int d, const std::string& emit, const CacheStore& cache,
                  bool allow_large) {
  json cell;
  cell["family"] = family_name(f);
  cell["degree"] = d;
  cell["n"] = n;

  std::string ckey = CacheStore::key(f, n, d, "character");
  ClassFunction chi;
  json char_payload;
  if (auto hit = cache.load(ckey)) {
    char_payload = *hit;
    chi = character_from_json(n, char_payload["character"]);
  } else {
    chi = character(f, n, d, allow_large);
    char_payload["dimension"] = static_cast<long long>(graded_basis(f, n, d).dim);
    char_payload["character"] = character_json(chi);
    cache.store(ckey, char_payload);
  }
  cell["dimension"] = char_payload["dimension"];
  if (emit == "all" || emit == "character") cell["character"] = char_payload["character"];

  if (emit == "all" || emit == "decomposition") {
    std::string dkey = CacheStore::key(f, n, d, "decomposition");
    json dec_payload;
    if (auto hit = cache.load(dkey)) {
      dec_payload = *hit;
    } else {
      MultiplicityTable t = decompose_character(chi);
      dec_payload["multiplicities"] = mult_json(t);
      dec_payload["weight"] = t.weight();
      cache.store(dkey, dec_payload);
    }
    cell["multiplicities"] = dec_payload["multiplicities"];
    cell["weight"] = dec_payload["weight"];
  }
  return cell;
}

template <typename Fn>
void parallel_indices(size_t count, int jobs, Fn&& fn) {
  int width = static_cast<int>(std::min<size_t>(std::max(jobs, 1), count));
  if (width <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  for (int t = 0; t < width; ++t)
    pool.emplace_back([&] {
      for (size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

void render_generic(const json& doc, const std::string& format, std::ostream& out);

void flatten_json(const std::string& prefix, const json& j,
                  std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten_json(prefix.empty() ? k : prefix + "." + k, v, rows);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i)
      flatten_json(prefix + "[" + std::to_string(i) + "]", j[static_cast<int>(i)], rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render_generic(const json& doc, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << doc.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten_json("", doc, rows);
  if (format == "csv") {
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << csv_escape(k) << ',' << csv_escape(v) << '\n';
    return;
  }
  if (format == "text-table") {
    size_t w = 0;
    for (const auto& [k, v] : rows) w = std::max(w, k.size());
    for (const auto& [k, v] : rows)
      out << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << '\n';
    return;
  }
  throw std::invalid_argument("unknown format '" + format + "'");
}

void render_compute(const json& doc, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    // characters flattened one row per (n, cycle type)
    out << "family,degree,n,cycle_type,value\n";
    for (const auto& cell : doc["cells"]) {
      std::string fam = cell["family"], deg = cell["degree"].dump(), n = cell["n"].dump();
      if (cell.contains("character")) {
        for (const auto& [mu, v] : cell["character"].items())
          out << fam << ',' << deg << ',' << n << ',' << csv_escape(mu) << ','
              << csv_escape(v.get<std::string>()) << '\n';
      } else {
        out << fam << ',' << deg << ',' << n << ",," << cell["dimension"].dump() << '\n';
      }
    }
    return;
  }
  if (format == "text-table") {
    out << "family  degree  n  dimension  weight  multiplicities\n";
    for (const auto& cell : doc["cells"]) {
      out << cell["family"].get<std::string>() << "  " << cell["degree"] << "  " << cell["n"]
          << "  " << cell["dimension"];
      if (cell.contains("weight")) out << "  " << cell["weight"];
      else out << "  -";
      if (cell.contains("multiplicities")) out << "  " << cell["multiplicities"].dump();
      else out << "  -";
      out << '\n';
    }
    return;
  }
  render_generic(doc, format, out);
}

json report_header(const char* command, const RunConfig& config) {
  json doc;
  doc["command"] = command;
  doc["engine_version"] = kEngineVersion;
  doc["family"] = family_name(config.family);
  return doc;
}

}  // namespace

int cmd_compute(const RunConfig& config, std::ostream& out) {
  CacheStore cache(config.cache_dir);
  std::vector<std::pair<int, int>> grid;  // (degree, n)
  for (int d : config.degrees.values())
    for (int n : config.ns.values()) grid.emplace_back(d, n);
  // guard everything up front so parallel workers cannot half-populate
  for (const auto& [d, n] : grid) check_size_guard(config.family, n, d, config.allow_large);
  std::vector<json> cells(grid.size());
  parallel_indices(grid.size(), config.jobs, [&](size_t i) {
    cells[i] = compute_cell(config.family, grid[i].second, grid[i].first, config.emit, cache,
                            config.allow_large);
  });
  json doc = report_header("compute", config);
  doc["cells"] = json::array();
  for (auto& c : cells) doc["cells"].push_back(std::move(c));
  render_compute(doc, config.format, out);
  return kExitOk;
}

int cmd_stability(const RunConfig& config, std::ostream& out) {
  StabilityReport rep = rep_stability_report(config.family, config.degrees.lo, config.ns.lo,
                                             config.ns.hi, config.allow_large);
  json doc = report_header("stability", config);
  doc["degree"] = rep.degree;
  doc["n_lo"] = rep.n_lo;
  doc["n_hi"] = rep.n_hi;
  doc["guaranteed_onset"] = rep.guaranteed_onset;
  if (rep.observed_onset) doc["observed_onset"] = *rep.observed_onset;
  else doc["observed_onset"] = nullptr;
  doc["entries"] = json::array();
  for (const StabilityEntry& e : rep.entries) {
    json je;
    je["n"] = e.n;
    je["conditions"] = {{"injective", e.injective},
                        {"orbit_spanning", e.orbit_spanning},
                        {"multiplicities_stable", e.multiplicities_stable}};
    je["multiplicities"] = mult_json(e.table);
    je["weight"] = e.table.weight();
    doc["entries"].push_back(std::move(je));
  }
  render_generic(doc, config.format, out);
  return kExitOk;
}

int cmd_fit_charpoly(const RunConfig& config, std::ostream& out) {
  CharPolyFit fit = fit_character_polynomial(config.family, config.degrees.lo,
                                             config.fit.values(), config.check.values(),
                                             config.max_deg, config.allow_large);
  json doc = report_header("fit-charpoly", config);
  doc["degree"] = config.degrees.lo;
  doc["status"] = fit.status == FitStatus::ok ? "ok"
                  : fit.status == FitStatus::infeasible ? "infeasible"
                                                        : "underdetermined";
  if (fit.status == FitStatus::ok) {
    json coeffs = json::object();
    for (const auto& [key, c] : fit.poly.coefficients) {
      std::ostringstream os;
      os << '[';
      for (size_t t = 0; t < key.size(); ++t) os << (t ? "," : "") << key[t];
      os << ']';
      coeffs[os.str()] = to_string(c);
    }
    doc["coefficients"] = coeffs;
    doc["pretty"] = fit.poly.to_string();
  }
  doc["validated"] = fit.validated;
  doc["failures"] = fit.failures;
  render_generic(doc, config.format, out);
  return (fit.status == FitStatus::ok && fit.validated) ? kExitOk : kExitCheckFailure;
}

int cmd_fit_betti(const RunConfig& config, std::ostream& out) {
  BettiFit fit = fit_betti_polynomial(config.family, config.degrees.lo, config.fit.values(),
                                      config.check.values(), config.max_deg,
                                      config.allow_large);
  json doc = report_header("fit-betti", config);
  doc["degree"] = config.degrees.lo;
  doc["status"] = fit.status == FitStatus::ok ? "ok"
                  : fit.status == FitStatus::infeasible ? "infeasible"
                                                        : "underdetermined";
  if (fit.status == FitStatus::ok) {
    json coeffs = json::array();
    for (const Rational& c : fit.poly.coeffs) coeffs.push_back(to_string(c));
    doc["coefficients"] = coeffs;  // ascending powers of n
    doc["pretty"] = fit.poly.to_string();
  }
  doc["validated"] = fit.validated;
  doc["failures"] = fit.failures;
  render_generic(doc, config.format, out);
  return (fit.status == FitStatus::ok && fit.validated) ? kExitOk : kExitCheckFailure;
}

int cmd_coinvariants(const RunConfig& config, std::ostream& out) {
  CoinvariantProbe probe = coinvariant_probe(config.family, config.degrees.lo, config.a,
                                             config.ns.lo, config.ns.hi, config.allow_large);
  json doc = report_header("coinvariants", config);
  doc["degree"] = probe.degree;
  doc["frozen_labels"] = probe.a;
  doc["entries"] = json::array();
  for (const CoinvariantEntry& e : probe.entries) {
    json je;
    je["n"] = e.n;
    je["dimension"] = e.dim;
    je["transition"] = {{"injective", e.injective},
                        {"surjective", e.surjective},
                        {"iso", e.iso()}};
    doc["entries"].push_back(std::move(je));
  }
  render_generic(doc, config.format, out);
  return kExitOk;
}

int cmd_gendegree(const RunConfig& config, std::ostream& out) {
  json doc = report_header("gen-degree", config);
  doc["degree"] = config.degrees.lo;
  doc["generation_level"] = config.gen_m;
  doc["entries"] = json::array();
  for (int n : config.ns.values()) {
    bool ok = generation_degree_check(config.family, config.degrees.lo, config.gen_m, n,
                                      config.allow_large);
    doc["entries"].push_back({{"n", n}, {"generated", ok}});
  }
  render_generic(doc, config.format, out);
  return kExitOk;
}

int cmd_selftest(std::ostream& out) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  {
    bool ok = true;
    for (int n = 0; n <= 12 && ok; ++n)
      ok = Integer(static_cast<long>(partitions(n).size())) == partition_count(n);
    report("partition enumeration matches counting recurrence (n <= 12)", ok);
  }
  {
    bool ok = true;
    for (int n = 1; n <= 6 && ok; ++n) {
      auto parts = partitions(n);
      for (size_t a = 0; a < parts.size() && ok; ++a)
        for (size_t b = a; b < parts.size() && ok; ++b) {
          Rational ip = inner_product(irreducible_class_function(n, parts[a]),
                                      irreducible_class_function(n, parts[b]));
          ok = (ip == (a == b ? 1 : 0));
        }
    }
    report("irreducible character orthogonality (n <= 6)", ok);
  }
  {
    bool ok = true;
    for (Family f : all_families())
      for (int n = 0; n <= 5 && ok; ++n)
        for (int i = 0; i <= 2 && ok; ++i)
          ok = graded_basis(f, n, i).dim == brute_force_dimension(f, n, i);
    report("graded dimensions match the brute-force oracle (n <= 5, i <= 2)", ok);
  }
  {
    bool ok = true;
    for (Family f : all_families())
      for (int i = 1; i <= 2 && ok; ++i) {
        const GradedBasis& gb = graded_basis(f, 5, i);
        ClassFunction chi = character(f, 5, i);
        ok = chi.at(Partition({1, 1, 1, 1, 1})) == Rational(static_cast<long>(gb.dim));
      }
    report("character at the identity equals the graded dimension (n = 5)", ok);
  }
  {
    std::mt19937 rng(12345);
    bool ok = true;
    for (Family f : all_families())
      for (int trial = 0; trial < 3 && ok; ++trial) {
        int n = 5;
        std::vector<int> img(static_cast<size_t>(n));
        for (int v = 1; v <= n; ++v) img[static_cast<size_t>(v - 1)] = v;
        std::shuffle(img.begin(), img.end(), rng);
        Permutation p(img);
        std::shuffle(img.begin(), img.end(), rng);
        Permutation q(img);
        const GradedBasis& gb = graded_basis(f, n, 2);
        SparseRationalMatrix lhs = quotient_action_matrix(gb, p.compose(q));
        SparseRationalMatrix rhs =
            quotient_action_matrix(gb, p).multiply(quotient_action_matrix(gb, q));
        ok = (lhs == rhs);
      }
    report("quotient actions compose as a group homomorphism (n = 5, degree 2)", ok);
  }
  {
    bool ok = true;
    for (Family f : all_families()) {
      MultiplicityTable t = decompose(f, 5, 1);
      ClassFunction chi = character(f, 5, 1);
      ClassFunction rebuilt(5);
      for (const Partition& mu : partitions(5)) rebuilt[mu] = 0;
      for (const auto& [lam, m] : t.mult) {
        ClassFunction irr = irreducible_class_function(5, pad_partition(lam, 5));
        for (const Partition& mu : partitions(5)) rebuilt[mu] += irr.at(mu) * Rational(static_cast<long>(m));
      }
      if (!(rebuilt == chi)) ok = false;
    }
    report("decomposition reconstructs the character (n = 5, degree 1)", ok);
  }
  out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? kExitOk : kExitCheckFailure;
}

}  // namespace cactus
