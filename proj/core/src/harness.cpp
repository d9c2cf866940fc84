#include "digitbin/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <random>
#include <thread>

#include "digitbin/collision.hpp"
#include "digitbin/error.hpp"
#include "digitbin/slices.hpp"
#include "digitbin/symmetry.hpp"

namespace digitbin {

namespace {

constexpr std::size_t kPrimesPerShard = 32;
// The sharpness probe searches p in (m, kSharpnessSpan * m].
constexpr u64 kSharpnessSpan = 16;

[[noreturn]] void config_error(const std::string& reason) {
  throw Error(ErrorCode::config_invalid, reason);
}

std::mt19937_64 make_rng(u64 seed, u64 p, u64 b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(p >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

// Deterministic pseudo-random units mod p for the linearization check.
std::vector<u64> sample_units(u64 seed, u64 p, u64 b, unsigned count) {
  std::vector<u64> out;
  auto rng = make_rng(seed, p, b);
  while (out.size() < count) {
    const u64 g = 1 + rng() % (p - 1);
    if (std::gcd(g, p) == 1) out.push_back(g);
  }
  return out;
}

struct LagContext {
  u64 b;
  unsigned lag;
  SliceSystem system;
  std::optional<ClassTable> table;
};

ScanRow gate_row(u64 p, u64 b, const ScanConfig& cfg) {
  const DigitSystem sys(p, b);
  GateOptions options;
  options.exhaustive_threshold = cfg.exhaustive_threshold;
  options.seed = cfg.seed;
  const GateReport report = verify_gate(sys, options);
  std::string witness;
  if (!report.passed()) {
    const auto& w = report.verification.witnesses.front();
    witness = w.failure + " " + w.detail;
  }
  return {Check::gate, b, 0, p, report.passed(), witness};
}

ScanRow linearization_row(u64 p, u64 b, const ScanConfig& cfg) {
  const DigitSystem sys(p, b);
  for (u64 g : sample_units(cfg.seed, p, b, cfg.linearization_samples)) {
    const u64 brute = collision_count_brute(sys, g);
    const u64 linear = collision_count_linear(sys, g);
    if (brute != linear) {
      return {Check::linearization, b, 0, p, false,
              "g=" + std::to_string(g) + " brute=" + std::to_string(brute) +
                  " linear=" + std::to_string(linear)};
    }
  }
  return {Check::linearization, b, 0, p, true, {}};
}

ScanRow determination_row(u64 p, const LagContext& ctx) {
  const u64 a = p % ctx.system.m();
  const i64 direct = deviation_direct(ctx.system, p);
  const i64 formula = ctx.table->at(a);
  if (direct == formula) return {Check::determination, ctx.b, ctx.lag, p, true, {}};
  return {Check::determination, ctx.b, ctx.lag, p, false,
          "a=" + std::to_string(a) + " direct=" + std::to_string(direct) +
              " formula=" + std::to_string(formula)};
}

ScanRow reflection_row(const LagContext& ctx) {
  const Verification v = check_reflection(*ctx.table);
  const i64 sum = unit_sum(*ctx.table);
  const Rational mean = grand_mean(*ctx.table);
  const bool mean_ok = mean == Rational{-1, 2};
  std::string witness;
  if (!v.passed()) witness = v.witnesses.front().detail;
  if (!mean_ok) {
    if (!witness.empty()) witness += "; ";
    witness += "sum=" + std::to_string(sum) + " mean=" + mean.str();
  }
  return {Check::reflection, ctx.b, ctx.lag, std::nullopt, v.passed() && mean_ok, witness};
}

ScanRow sharpness_row(const LagContext& ctx) {
  const u64 limit = kSharpnessSpan * ctx.system.m();
  if (find_sharpness_witness(ctx.b, ctx.lag, limit)) {
    return {Check::determination, ctx.b, ctx.lag, std::nullopt, true, {}};
  }
  return {Check::determination, ctx.b, ctx.lag, std::nullopt, false,
          "no sharpness witness up to " + std::to_string(limit)};
}

ScanRow halfgroup_row(const LagContext& ctx) {
  const HalfGroupResult r = check_half_group(ctx.system);
  std::string witness;
  if (!r.verification.passed()) {
    const auto& w = r.verification.witnesses.front();
    witness = w.failure + " " + w.detail;
  }
  return {Check::halfgroup, ctx.b, ctx.lag, std::nullopt, r.verification.passed(), witness};
}

void scan_prime(u64 p, const ScanConfig& cfg, const std::vector<LagContext>& contexts,
                std::vector<ScanRow>& out) {
  for (u64 b : cfg.bases) {
    if (p <= b || std::gcd(p, b) != 1) continue;
    if (cfg.checks.contains(Check::gate)) out.push_back(gate_row(p, b, cfg));
    if (cfg.checks.contains(Check::linearization)) out.push_back(linearization_row(p, b, cfg));
    if (!cfg.checks.contains(Check::determination)) continue;
    for (const auto& ctx : contexts) {
      if (ctx.b == b && p > ctx.system.m()) out.push_back(determination_row(p, ctx));
    }
  }
}

std::string csv_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  return s;
}

}  // namespace

std::string_view to_string(Check check) noexcept {
  switch (check) {
    case Check::gate: return "gate";
    case Check::determination: return "determination";
    case Check::reflection: return "reflection";
    case Check::halfgroup: return "halfgroup";
    case Check::linearization: return "linearization";
  }
  return "unknown";
}

Check parse_check(std::string_view name) {
  for (Check c : kAllChecks) {
    if (to_string(c) == name) return c;
  }
  config_error("unknown check '" + std::string(name) + "'");
}

CheckSet::CheckSet(std::initializer_list<Check> checks) {
  for (Check c : checks) insert(c);
}

CheckSet CheckSet::all() {
  CheckSet s;
  for (Check c : kAllChecks) s.insert(c);
  return s;
}

u64 ScanReport::total_failures() const noexcept {
  u64 total = 0;
  for (const auto& t : tallies) total += t.fail;
  return total;
}

ScanConfig normalized(ScanConfig cfg) {
  if (cfg.bases.empty()) config_error("at least one base is required");
  if (cfg.lags.empty()) config_error("at least one lag is required");
  if (cfg.checks.empty()) config_error("at least one check is required");
  if (cfg.p_min > cfg.p_max) {
    config_error("p_min " + std::to_string(cfg.p_min) + " exceeds p_max " +
                 std::to_string(cfg.p_max));
  }
  if (cfg.parallelism == 0) config_error("parallelism must be >= 1");
  std::sort(cfg.bases.begin(), cfg.bases.end());
  cfg.bases.erase(std::unique(cfg.bases.begin(), cfg.bases.end()), cfg.bases.end());
  std::sort(cfg.lags.begin(), cfg.lags.end());
  cfg.lags.erase(std::unique(cfg.lags.begin(), cfg.lags.end()), cfg.lags.end());

  const bool per_lag = cfg.checks.contains(Check::determination) ||
                       cfg.checks.contains(Check::reflection) ||
                       cfg.checks.contains(Check::halfgroup);
  for (u64 b : cfg.bases) {
    if (b < 2) config_error("base must be >= 2, got " + std::to_string(b));
    if (!per_lag) continue;
    for (unsigned lag : cfg.lags) {
      if (lag < 1) config_error("lag must be >= 1");
      u64 m = 0;
      if (!checked_pow(b, lag + 1, m) || m > ClassTable::kMaxModulus) {
        config_error("modulus b^(lag+1) too large for b=" + std::to_string(b) +
                     " lag=" + std::to_string(lag));
      }
      if (cfg.checks.contains(Check::determination) && m >= cfg.p_min) {
        config_error("determination needs b^(lag+1) < p_min; b=" + std::to_string(b) +
                     " lag=" + std::to_string(lag) + " gives " + std::to_string(m) +
                     " >= " + std::to_string(cfg.p_min));
      }
    }
  }
  if (cfg.checks.contains(Check::linearization) && cfg.linearization_samples == 0) {
    config_error("linearization needs at least one sample");
  }
  return cfg;
}

ScanReport run_scan(const ScanConfig& raw) {
  const auto start = std::chrono::steady_clock::now();
  ScanReport report;
  report.config = normalized(raw);
  const ScanConfig& cfg = report.config;

  const bool per_lag = cfg.checks.contains(Check::determination) ||
                       cfg.checks.contains(Check::reflection) ||
                       cfg.checks.contains(Check::halfgroup);
  std::vector<LagContext> contexts;
  if (per_lag) {
    for (u64 b : cfg.bases) {
      for (unsigned lag : cfg.lags) {
        LagContext ctx{b, lag, SliceSystem(b, lag), std::nullopt};
        if (cfg.checks.contains(Check::determination) ||
            cfg.checks.contains(Check::reflection)) {
          ctx.table.emplace(ctx.system);
        }
        contexts.push_back(std::move(ctx));
      }
    }
  }

  for (const auto& ctx : contexts) {
    if (cfg.checks.contains(Check::reflection)) report.rows.push_back(reflection_row(ctx));
    if (cfg.checks.contains(Check::halfgroup)) report.rows.push_back(halfgroup_row(ctx));
    if (cfg.checks.contains(Check::determination)) report.rows.push_back(sharpness_row(ctx));
  }

  const std::vector<u64> primes = primes_in_range(cfg.p_min, cfg.p_max);
  report.primes_scanned = primes.size();
  const std::size_t shard_count = (primes.size() + kPrimesPerShard - 1) / kPrimesPerShard;
  std::vector<std::vector<ScanRow>> shards(shard_count);
  std::vector<std::exception_ptr> errors(shard_count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t s = next++; s < shard_count; s = next++) {
      try {
        const std::size_t lo = s * kPrimesPerShard;
        const std::size_t hi = std::min(primes.size(), lo + kPrimesPerShard);
        for (std::size_t i = lo; i < hi; ++i) scan_prime(primes[i], cfg, contexts, shards[s]);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(cfg.parallelism, shard_count));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (auto& shard : shards) {
    report.rows.insert(report.rows.end(), std::make_move_iterator(shard.begin()),
                       std::make_move_iterator(shard.end()));
  }

  std::array<std::size_t, kAllChecks.size()> kept{};
  for (const auto& row : report.rows) {
    const auto idx = static_cast<std::size_t>(row.check);
    Tally& t = report.tallies[idx];
    if (row.pass) {
      ++t.pass;
      continue;
    }
    ++t.fail;
    if (kept[idx] < ScanReport::kMaxWitnessesPerCheck) {
      ++kept[idx];
      report.witnesses.push_back(row);
    }
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool rerun_check(const ScanRow& row, const ScanConfig& cfg) {
  switch (row.check) {
    case Check::gate: return gate_row(*row.p, row.b, cfg).pass;
    case Check::linearization: return linearization_row(*row.p, row.b, cfg).pass;
    case Check::determination:
    case Check::reflection:
    case Check::halfgroup: {
      LagContext ctx{row.b, row.lag, SliceSystem(row.b, row.lag), std::nullopt};
      if (row.check != Check::halfgroup) ctx.table.emplace(ctx.system);
      if (row.check == Check::determination) {
        return row.p ? determination_row(*row.p, ctx).pass : sharpness_row(ctx).pass;
      }
      if (row.check == Check::reflection) return reflection_row(ctx).pass;
      return halfgroup_row(ctx).pass;
    }
  }
  return false;
}

u64 Census::populated() const {
  return static_cast<u64>(std::count_if(classes.begin(), classes.end(),
                                        [](const CensusClass& c) { return c.primes > 0; }));
}

bool Census::determined() const {
  return std::all_of(classes.begin(), classes.end(),
                     [](const CensusClass& c) { return c.primes == 0 || c.determined(); });
}

Census class_census(u64 b, unsigned lag, u64 p_max) {
  const SliceSystem sys(b, lag);
  if (sys.m() >= p_max) {
    throw Error(ErrorCode::invalid_argument,
                "census bound " + std::to_string(p_max) + " must exceed m = " +
                    std::to_string(sys.m()));
  }
  const ClassTable table(sys);
  Census census{b, lag, sys.m(), p_max, table.unit_count(), {}};
  std::vector<std::size_t> slot(sys.m(), 0);
  for (u64 a : table.units()) {
    slot[a] = census.classes.size();
    census.classes.push_back({a, table.at(a), {}, 0, 0});
  }
  for (u64 p : primes_in_range(sys.m() + 1, p_max)) {
    if (std::gcd(p, b) != 1) continue;
    CensusClass& cls = census.classes[slot[p % sys.m()]];
    const i64 s = deviation_direct(sys, p);
    auto it = std::lower_bound(cls.observed.begin(), cls.observed.end(), s);
    if (it == cls.observed.end() || *it != s) cls.observed.insert(it, s);
    if (cls.primes++ == 0) cls.first_prime = p;
  }
  return census;
}

std::optional<SharpnessWitness> find_sharpness_witness(u64 b, unsigned lag, u64 limit) {
  const SliceSystem sys(b, lag);
  const u64 block = sys.block();
  // First (p, S) seen for each residue mod b^lag.
  std::vector<std::optional<std::pair<u64, i64>>> first(block);
  for (u64 p = sys.m() + 1; p <= limit; ++p) {
    if (std::gcd(p, b) != 1) continue;
    const i64 s = deviation_direct(sys, p);
    auto& slot = first[p % block];
    if (!slot) {
      slot.emplace(p, s);
    } else if (slot->second != s) {
      return SharpnessWitness{slot->first, p, slot->second, s};
    }
  }
  return std::nullopt;
}

std::vector<GateTableRow> gate_width_table() {
  static constexpr std::array<std::pair<u64, u64>, 5> kRows = {
      {{10, 17}, {10, 97}, {10, 193}, {7, 41}, {12, 67}}};
  std::vector<GateTableRow> rows;
  for (const auto& [b, p] : kRows) {
    const DigitSystem sys(p, b);
    u64 deranging = 0;
    for (u64 g = 1; g < p; ++g) {
      if (collision_count_linear(sys, g) == 0) ++deranging;
    }
    const bool gate_ok = verify_gate(sys).passed();
    rows.push_back({b, p, sys.bin_size(), deranging, gate_ok && deranging == b - 1});
  }
  return rows;
}

std::vector<DeterminationTableRow> determination_table() {
  std::vector<DeterminationTableRow> rows;
  for (u64 b : {3, 5, 7, 10}) {
    const Census census = class_census(b, 1, 10000);
    rows.push_back({b, census.m, census.classes.size(), census.complete() && census.determined()});
  }
  return rows;
}

std::string scan_report_csv(const ScanReport& report) {
  std::string out = "check,b,lag,p,status,witness\n";
  for (const auto& row : report.rows) {
    out += to_string(row.check);
    out += ',' + std::to_string(row.b) + ',';
    if (row.lag != 0) out += std::to_string(row.lag);
    out += ',';
    if (row.p) out += std::to_string(*row.p);
    out += row.pass ? ",pass," : ",fail,";
    out += csv_field(row.witness);
    out += '\n';
  }
  return out;
}

std::string scan_report_json(const ScanReport& report) {
  using nlohmann::ordered_json;
  const ScanConfig& cfg = report.config;

  auto row_json = [](const ScanRow& row) {
    ordered_json j;
    j["check"] = to_string(row.check);
    j["b"] = row.b;
    j["lag"] = row.lag == 0 ? ordered_json() : ordered_json(row.lag);
    j["p"] = row.p ? ordered_json(*row.p) : ordered_json();
    j["status"] = row.pass ? "pass" : "fail";
    j["witness"] = row.witness;
    return j;
  };

  ordered_json j;
  ordered_json& c = j["config"];
  c["bases"] = cfg.bases;
  c["lags"] = cfg.lags;
  c["p_min"] = cfg.p_min;
  c["p_max"] = cfg.p_max;
  c["checks"] = ordered_json::array();
  for (Check ch : kAllChecks) {
    if (cfg.checks.contains(ch)) c["checks"].push_back(to_string(ch));
  }
  c["exhaustive_threshold"] = cfg.exhaustive_threshold;
  c["linearization_samples"] = cfg.linearization_samples;
  c["seed"] = cfg.seed;
  j["primes_scanned"] = report.primes_scanned;
  ordered_json& t = j["tallies"];
  for (Check ch : kAllChecks) {
    if (!cfg.checks.contains(ch)) continue;
    t[std::string(to_string(ch))] = {{"pass", report.tally(ch).pass},
                                     {"fail", report.tally(ch).fail}};
  }
  j["witnesses"] = ordered_json::array();
  for (const auto& w : report.witnesses) j["witnesses"].push_back(row_json(w));
  j["rows"] = ordered_json::array();
  for (const auto& row : report.rows) j["rows"].push_back(row_json(row));
  return j.dump(2) + "\n";
}

}  // namespace digitbin
