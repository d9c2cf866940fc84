#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "digitbin/modarith.hpp"

namespace digitbin {

enum class Check { gate, determination, reflection, halfgroup, linearization };

inline constexpr std::array<Check, 5> kAllChecks = {
    Check::gate, Check::determination, Check::reflection, Check::halfgroup,
    Check::linearization};

std::string_view to_string(Check check) noexcept;
/// Throws ConfigInvalid for unknown names.
Check parse_check(std::string_view name);

class CheckSet {
 public:
  CheckSet() = default;
  CheckSet(std::initializer_list<Check> checks);
  static CheckSet all();

  void insert(Check c) noexcept { bits_ |= mask(c); }
  bool contains(Check c) const noexcept { return (bits_ & mask(c)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }

 private:
  static unsigned mask(Check c) noexcept { return 1u << static_cast<unsigned>(c); }
  unsigned bits_ = 0;
};

struct ScanConfig {
  std::vector<u64> bases{10};
  std::vector<unsigned> lags{1};
  u64 p_min = 101;
  u64 p_max = 1000;
  CheckSet checks = CheckSet::all();
  u64 exhaustive_threshold = 10000;
  /// Worker count hint; the report does not depend on it.
  unsigned parallelism = 1;
  /// Pseudo-random multipliers per (p, b) for the linearization check.
  unsigned linearization_samples = 2;
  u64 seed = 0;
};

/// Throws ConfigInvalid with a reason. Bases and lags are sorted and
/// deduplicated in the returned copy.
ScanConfig normalized(ScanConfig cfg);

/// One executed check instance. lag is 0 and p empty where they do not
/// apply (gate and linearization ignore the lag; reflection and halfgroup
/// run once per (b, lag)). A determination row without p is the
/// sharpness probe for that (b, lag).
struct ScanRow {
  Check check;
  u64 b;
  unsigned lag;
  std::optional<u64> p;
  bool pass;
  std::string witness;
};

struct Tally {
  u64 pass = 0;
  u64 fail = 0;
};

struct ScanReport {
  ScanConfig config;
  std::vector<ScanRow> rows;
  std::array<Tally, kAllChecks.size()> tallies{};
  /// Failing rows, at most kMaxWitnessesPerCheck per check, in row order.
  std::vector<ScanRow> witnesses;
  u64 primes_scanned = 0;
  double elapsed_seconds = 0.0;  ///< not serialized

  static constexpr std::size_t kMaxWitnessesPerCheck = 16;

  const Tally& tally(Check c) const { return tallies[static_cast<std::size_t>(c)]; }
  u64 total_failures() const noexcept;
  bool passed() const noexcept { return total_failures() == 0; }
};

/// Runs every requested check over the primes in [p_min, p_max] and every
/// (b, lag). Sharded over prime sub-ranges; rows are emitted in ascending
/// prime order independent of parallelism. Throws ConfigInvalid.
ScanReport run_scan(const ScanConfig& cfg);

/// Re-runs the single check a row describes, in isolation. Returns whether
/// it passes now.
bool rerun_check(const ScanRow& row, const ScanConfig& cfg);

struct CensusClass {
  u64 a;
  i64 formula;
  std::vector<i64> observed;  ///< distinct deviations seen, ascending
  u64 primes = 0;
  u64 first_prime = 0;

  bool determined() const { return observed.size() == 1 && observed.front() == formula; }
};

struct Census {
  u64 b;
  unsigned lag;
  u64 m;
  u64 p_max;
  u64 phi;
  std::vector<CensusClass> classes;  ///< every unit class mod m, ascending a

  u64 populated() const;
  /// Every unit class has at least one prime. A shortfall means p_max is
  /// too small, not that determination failed.
  bool complete() const { return populated() == classes.size(); }
  /// Every populated class is a singleton matching the formula.
  bool determined() const;
};

/// Groups the primes m < p <= p_max coprime to b by p mod m and records the
/// deviations seen in each class. Requires m < p_max.
Census class_census(u64 b, unsigned lag, u64 p_max);

/// Two moduli congruent mod b^lag (both > m, coprime to b) whose deviations
/// differ, showing that reduction mod b^lag does not determine S.
struct SharpnessWitness {
  u64 p1;
  u64 p2;
  i64 s1;
  i64 s2;
};

/// Searches integers m < p <= limit in ascending order.
std::optional<SharpnessWitness> find_sharpness_witness(u64 b, unsigned lag, u64 limit);

struct GateTableRow {
  u64 b;
  u64 p;
  u64 bin_size;
  u64 deranging_count;  ///< #{g : C(g) = 0}, counted over every unit
  bool verified;        ///< count == b-1 and verify_gate passed
};

struct DeterminationTableRow {
  u64 b;
  u64 modulus;
  u64 classes;
  bool determined;  ///< census complete and determined
};

/// Preset rows (b, p) = (10,17), (10,97), (10,193), (7,41), (12,67).
std::vector<GateTableRow> gate_width_table();

/// b in {3,5,7,10}, lag 1, primes b^2 < p <= 10^4.
std::vector<DeterminationTableRow> determination_table();

// Serialization shared with the command-line tool. CSV uses LF endings and
// the header check,b,lag,p,status,witness. JSON is emitted with a fixed key
// order and parses back to identical bytes.
std::string scan_report_csv(const ScanReport& report);
std::string scan_report_json(const ScanReport& report);

}  // namespace digitbin
