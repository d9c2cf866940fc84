#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "digitbin/collision.hpp"
#include "digitbin/error.hpp"
#include "digitbin/harness.hpp"
#include "digitbin/slices.hpp"
#include "digitbin/symmetry.hpp"

namespace digitbin::cli {

namespace {

using nlohmann::ordered_json;

enum class Format { table, csv, json };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const CLI::Validator kDecimal(
    [](std::string& s) -> std::string {
      if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return "expected a decimal integer, got '" + s + "'";
      }
      return {};
    },
    "DECIMAL");

struct Common {
  std::optional<std::string> format;
  std::string out_path;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  sub->add_option("--out", common.out_path, "Write output to a file");
}

// Plain whitespace-aligned columns for the human-readable format.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << "  ";
        os << std::setw(static_cast<int>(width[i])) << row[i];
      }
      os << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

class Session {
 public:
  Session(std::ostream& out, Terminal term) : out_(out), term_(term) {}

  // Chooses the format and output stream once flags are parsed.
  void open(const Common& common) {
    if (common.format) {
      format_ = *common.format == "table" ? Format::table
                : *common.format == "csv" ? Format::csv
                                          : Format::json;
    } else {
      format_ = (common.out_path.empty() && term_.stdout_is_tty) ? Format::table : Format::csv;
    }
    if (!common.out_path.empty()) {
      file_.open(common.out_path, std::ios::binary | std::ios::trunc);
      if (!file_) throw UsageError("cannot open output file '" + common.out_path + "'");
      to_terminal_ = false;
    } else {
      to_terminal_ = term_.stdout_is_tty;
    }
  }

  Format format() const { return format_; }
  std::ostream& os() { return file_.is_open() ? file_ : out_; }

  std::string status(bool pass) const {
    const bool color = format_ == Format::table && to_terminal_ && term_.color;
    if (!color) return pass ? "PASS" : "FAIL";
    return pass ? "\033[32mPASS\033[0m" : "\033[31mFAIL\033[0m";
  }

  // Summary lines are comments in CSV so the data rows keep their schema.
  void summary(const std::string& line) {
    if (format_ == Format::csv) os() << "# ";
    os() << line << '\n';
  }

  void json(const ordered_json& j) { os() << j.dump(2) << '\n'; }

 private:
  std::ostream& out_;
  Terminal term_;
  std::ofstream file_;
  Format format_ = Format::csv;
  bool to_terminal_ = false;
};

std::string yes_no(bool v) { return v ? "yes" : "no"; }

// ---------------------------------------------------------------- count

struct CountArgs {
  u64 p = 0, b = 0, g = 0;
  std::string method = "linear";
};

void validate_count(const CountArgs& a) {
  if (a.b < 2) throw UsageError("b must be >= 2");
  if (a.p <= a.b) throw UsageError("p must exceed b");
  if (std::gcd(a.p, a.b) != 1) throw UsageError("gcd(p, b) must be 1");
  if (a.g < 1 || a.g >= a.p) throw UsageError("g must satisfy 1 <= g < p");
  if (std::gcd(a.g, a.p) != 1) throw UsageError("gcd(g, p) must be 1");
}

int cmd_count(Session& s, const CountArgs& a) {
  validate_count(a);
  const DigitSystem sys(a.p, a.b);
  std::optional<u64> brute, linear;
  if (a.method != "linear") brute = collision_count_brute(sys, a.g);
  if (a.method != "brute") linear = collision_count_linear(sys, a.g);
  const bool agree = !brute || !linear || *brute == *linear;

  if (s.format() == Format::json) {
    ordered_json j{{"p", a.p}, {"b", a.b}, {"g", a.g}};
    if (brute) j["brute"] = *brute;
    if (linear) j["linear"] = *linear;
    j["agree"] = agree;
    s.json(j);
  } else {
    if (brute && linear) {
      s.os() << *brute << ' ' << *linear << '\n';
    } else {
      s.os() << (brute ? *brute : *linear) << '\n';
    }
  }
  return agree ? kOk : kCheckFailed;
}

// ----------------------------------------------------------------- gate

struct GateArgs {
  u64 p = 0, b = 0;
  bool exhaustive = false;
  u64 threshold = GateOptions{}.exhaustive_threshold;
};

int cmd_gate(Session& s, const GateArgs& a) {
  if (a.b < 2) throw UsageError("b must be >= 2");
  if (!is_prime(a.p)) throw UsageError("p must be prime, got " + std::to_string(a.p));
  if (a.p <= a.b) throw UsageError("p must exceed b");
  const DigitSystem sys(a.p, a.b);
  GateOptions options;
  options.exhaustive_threshold = a.exhaustive ? std::numeric_limits<u64>::max() : a.threshold;
  const GateReport report = verify_gate(sys, options);
  const auto& v = report.verification;

  if (s.format() == Format::json) {
    ordered_json j{{"p", a.p}, {"b", a.b}};
    j["family"] = ordered_json::array();
    for (const auto& m : report.family) j["family"].push_back({{"u", m.u}, {"c", m.c}, {"g", m.g}});
    j["exhaustive"] = report.exhaustive;
    j["outside_checked"] = report.outside_checked;
    j["status"] = report.passed() ? "pass" : "fail";
    j["witnesses"] = ordered_json::array();
    for (const auto& w : v.witnesses) j["witnesses"].push_back({{"failure", w.failure}, {"detail", w.detail}});
    s.json(j);
    return report.passed() ? kOk : kCheckFailed;
  }

  if (s.format() == Format::csv) {
    s.os() << "u,c,g\n";
    for (const auto& m : report.family) s.os() << m.u << ',' << m.c << ',' << m.g << '\n';
  } else {
    TextTable t({"u", "c", "g"});
    for (const auto& m : report.family) {
      t.add({std::to_string(m.u), std::to_string(m.c), std::to_string(m.g)});
    }
    t.print(s.os());
  }
  s.summary("gate: " + s.status(report.passed()) + " family=" +
            std::to_string(report.family.size()) + " outside_checked=" +
            std::to_string(report.outside_checked) + " exhaustive=" + yes_no(report.exhaustive));
  for (const auto& w : v.witnesses) s.summary("witness: " + w.failure + " " + w.detail);
  return report.passed() ? kOk : kCheckFailed;
}

// ------------------------------------------------------------ deviation

struct DeviationArgs {
  u64 p = 0, b = 0;
  unsigned lag = 1;
  std::string method = "direct";
};

int cmd_deviation(Session& s, const DeviationArgs& a) {
  if (a.b < 2) throw UsageError("b must be >= 2");
  if (a.lag < 1) throw UsageError("lag must be >= 1");
  const SliceSystem sys(a.b, a.lag);
  if (a.p <= sys.m()) {
    throw UsageError("p must exceed m = b^(lag+1) = " + std::to_string(sys.m()));
  }
  if (std::gcd(a.p, a.b) != 1) throw UsageError("gcd(p, b) must be 1");

  std::optional<i64> direct, formula;
  if (a.method != "formula") direct = deviation_direct(sys, a.p);
  if (a.method != "direct") formula = deviation_formula(sys, a.p % sys.m());
  const bool agree = !direct || !formula || *direct == *formula;

  if (s.format() == Format::json) {
    ordered_json j{{"p", a.p}, {"b", a.b}, {"lag", a.lag}, {"m", sys.m()}, {"a", a.p % sys.m()}};
    if (direct) j["direct"] = *direct;
    if (formula) j["formula"] = *formula;
    j["agree"] = agree;
    s.json(j);
  } else if (direct && formula) {
    s.os() << *direct << ' ' << *formula << '\n';
  } else {
    s.os() << (direct ? *direct : *formula) << '\n';
  }
  return agree ? kOk : kCheckFailed;
}

// -------------------------------------------------------------- classes

struct ClassesArgs {
  u64 b = 0;
  unsigned lag = 1;
  std::vector<std::string> checks;
};

int cmd_classes(Session& s, const ClassesArgs& a) {
  if (a.b < 2) throw UsageError("b must be >= 2");
  if (a.lag < 1) throw UsageError("lag must be >= 1");
  const bool want_reflection =
      std::find(a.checks.begin(), a.checks.end(), "reflection") != a.checks.end();
  const bool want_mean = std::find(a.checks.begin(), a.checks.end(), "mean") != a.checks.end();
  const ClassTable table(SliceSystem(a.b, a.lag));

  std::optional<Verification> reflection;
  if (want_reflection) reflection = check_reflection(table);
  const i64 sum = unit_sum(table);
  const Rational mean = grand_mean(table);
  // Cross-multiplied comparison against -1/2.
  const bool mean_ok = sum * 2 == -static_cast<i64>(table.unit_count());
  const bool pass = (!reflection || reflection->passed()) && (!want_mean || mean_ok);

  if (s.format() == Format::json) {
    ordered_json j{{"b", a.b}, {"lag", a.lag}, {"m", table.modulus()}, {"units", table.unit_count()}};
    j["rows"] = ordered_json::array();
    for (u64 u : table.units()) j["rows"].push_back({{"a", u}, {"S", table.at(u)}});
    ordered_json checks = ordered_json::object();
    if (reflection) {
      checks["reflection"] = {{"status", reflection->passed() ? "pass" : "fail"},
                              {"pairs", reflection->checked}};
    }
    if (want_mean) {
      checks["mean"] = {{"status", mean_ok ? "pass" : "fail"}, {"sum", sum}, {"value", mean.str()}};
    }
    j["checks"] = checks;
    s.json(j);
    return pass ? kOk : kCheckFailed;
  }

  if (s.format() == Format::csv) {
    s.os() << "a,S\n";
    for (u64 u : table.units()) s.os() << u << ',' << table.at(u) << '\n';
  } else {
    TextTable t({"a", "S"});
    for (u64 u : table.units()) t.add({std::to_string(u), std::to_string(table.at(u))});
    t.print(s.os());
  }
  if (reflection) {
    s.summary("reflection: " + s.status(reflection->passed()) +
              " pairs=" + std::to_string(reflection->checked));
    for (const auto& w : reflection->witnesses) s.summary("witness: " + w.detail);
  }
  if (want_mean) {
    s.summary("mean: " + mean.str() + " " + s.status(mean_ok) + " sum=" + std::to_string(sum) +
              " units=" + std::to_string(table.unit_count()));
  }
  return pass ? kOk : kCheckFailed;
}

// ------------------------------------------------------------ halfgroup

struct HalfGroupArgs {
  u64 b = 0;
  unsigned lag = 1;
};

int cmd_halfgroup(Session& s, const HalfGroupArgs& a) {
  if (a.b < 2) throw UsageError("b must be >= 2");
  if (a.lag < 1) throw UsageError("lag must be >= 1");
  const SliceSystem sys(a.b, a.lag);
  const HalfGroupResult r = check_half_group(sys);
  const bool pass = r.verification.passed();

  if (s.format() == Format::json) {
    ordered_json j{{"b", a.b}, {"lag", a.lag}, {"m", r.profile.m}, {"phi", r.profile.phi}};
    j["rows"] = ordered_json::array();
    for (const auto& e : r.profile.entries) {
      j["rows"].push_back({{"n", e.n}, {"c", e.c}, {"trivial", e.trivial}, {"size", e.size},
                           {"expected", e.expected}});
    }
    j["status"] = pass ? "pass" : "fail";
    s.json(j);
    return pass ? kOk : kCheckFailed;
  }

  if (s.format() == Format::csv) {
    s.os() << "n,c,trivial,size,expected\n";
    for (const auto& e : r.profile.entries) {
      s.os() << e.n << ',' << e.c << ',' << (e.trivial ? "true" : "false") << ',' << e.size
             << ',' << e.expected << '\n';
    }
  } else {
    TextTable t({"n", "c", "trivial", "size", "expected"});
    for (const auto& e : r.profile.entries) {
      t.add({std::to_string(e.n), std::to_string(e.c), e.trivial ? "yes" : "no",
             std::to_string(e.size), std::to_string(e.expected)});
    }
    t.print(s.os());
  }
  u64 nontrivial = 0;
  for (const auto& e : r.profile.entries) nontrivial += !e.trivial;
  s.summary("halfgroup: " + s.status(pass) + " nontrivial=" + std::to_string(nontrivial) +
            " phi=" + std::to_string(r.profile.phi));
  for (const auto& w : r.verification.witnesses) s.summary("witness: " + w.failure + " " + w.detail);
  return pass ? kOk : kCheckFailed;
}

// ----------------------------------------------------------------- scan

struct ScanArgs {
  std::vector<u64> bases{10};
  std::vector<unsigned> lags{1};
  u64 p_min = 101, p_max = 1000;
  std::vector<std::string> checks;
  u64 threshold = ScanConfig{}.exhaustive_threshold;
  unsigned jobs = 1;
  unsigned samples = ScanConfig{}.linearization_samples;
  u64 seed = 0;
  int paper_table = 0;
};

int emit_gate_table(Session& s) {
  const auto rows = gate_width_table();
  const bool pass = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.verified; });
  if (s.format() == Format::json) {
    ordered_json j{{"table", 1}};
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"b", r.b}, {"p", r.p}, {"Q", r.bin_size},
                           {"deranging_count", r.deranging_count}, {"verified", r.verified}});
    }
    j["status"] = pass ? "pass" : "fail";
    s.json(j);
    return pass ? kOk : kCheckFailed;
  }
  if (s.format() == Format::csv) {
    s.os() << "b,p,Q,deranging_count\n";
    for (const auto& r : rows) {
      s.os() << r.b << ',' << r.p << ',' << r.bin_size << ',' << r.deranging_count << '\n';
    }
  } else {
    TextTable t({"b", "p", "Q", "deranging_count", "formula"});
    for (const auto& r : rows) {
      t.add({std::to_string(r.b), std::to_string(r.p), std::to_string(r.bin_size),
             std::to_string(r.deranging_count), "b-1"});
    }
    t.print(s.os());
  }
  s.summary("gate width: " + s.status(pass));
  return pass ? kOk : kCheckFailed;
}

int emit_determination_table(Session& s) {
  const auto rows = determination_table();
  const bool pass =
      std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.determined; });
  if (s.format() == Format::json) {
    ordered_json j{{"table", 2}};
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"b", r.b}, {"modulus", r.modulus}, {"classes", r.classes},
                           {"determined", yes_no(r.determined)}});
    }
    j["status"] = pass ? "pass" : "fail";
    s.json(j);
    return pass ? kOk : kCheckFailed;
  }
  if (s.format() == Format::csv) {
    s.os() << "b,modulus,classes,determined\n";
    for (const auto& r : rows) {
      s.os() << r.b << ',' << r.modulus << ',' << r.classes << ',' << yes_no(r.determined) << '\n';
    }
  } else {
    TextTable t({"b", "modulus", "classes", "determined"});
    for (const auto& r : rows) {
      t.add({std::to_string(r.b), std::to_string(r.modulus), std::to_string(r.classes),
             yes_no(r.determined)});
    }
    t.print(s.os());
  }
  s.summary("finite determination: " + s.status(pass));
  return pass ? kOk : kCheckFailed;
}

int cmd_scan(Session& s, const ScanArgs& a, std::ostream& err) {
  if (a.paper_table == 1) return emit_gate_table(s);
  if (a.paper_table == 2) return emit_determination_table(s);

  ScanConfig cfg;
  cfg.bases = a.bases;
  cfg.lags = a.lags;
  cfg.p_min = a.p_min;
  cfg.p_max = a.p_max;
  if (!a.checks.empty()) {
    cfg.checks = CheckSet{};
    for (const auto& name : a.checks) cfg.checks.insert(parse_check(name));
  }
  cfg.exhaustive_threshold = a.threshold;
  cfg.parallelism = a.jobs;
  cfg.linearization_samples = a.samples;
  cfg.seed = a.seed;

  const ScanReport report = run_scan(cfg);
  switch (s.format()) {
    case Format::csv: s.os() << scan_report_csv(report); break;
    case Format::json: s.os() << scan_report_json(report); break;
    case Format::table: {
      TextTable t({"check", "pass", "fail"});
      for (Check c : kAllChecks) {
        if (!report.config.checks.contains(c)) continue;
        t.add({std::string(to_string(c)), std::to_string(report.tally(c).pass),
               std::to_string(report.tally(c).fail)});
      }
      t.print(s.os());
      for (const auto& w : report.witnesses) {
        s.os() << "witness: " << to_string(w.check) << " b=" << w.b;
        if (w.lag) s.os() << " lag=" << w.lag;
        if (w.p) s.os() << " p=" << *w.p;
        s.os() << ' ' << w.witness << '\n';
      }
      s.summary("scan: " + s.status(report.passed()) + " primes=" +
                std::to_string(report.primes_scanned));
      err << "elapsed " << std::fixed << std::setprecision(3) << report.elapsed_seconds << " s\n";
      break;
    }
  }
  return report.passed() ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        Terminal term) {
  CLI::App app{"Collision-count verification for digit-bin partitions", "digitbin"};
  app.require_subcommand(1);

  Common common;
  Session session(out, term);

  CountArgs count;
  auto* count_cmd = app.add_subcommand("count", "Collision count C(g)");
  count_cmd->add_option("-p", count.p, "Modulus")->required()->check(kDecimal);
  count_cmd->add_option("-b", count.b, "Base")->required()->check(kDecimal);
  count_cmd->add_option("-g", count.g, "Multiplier")->required()->check(kDecimal);
  count_cmd->add_option("--method", count.method)->check(CLI::IsMember({"brute", "linear", "both"}));
  add_common(count_cmd, common);

  GateArgs gate;
  auto* gate_cmd = app.add_subcommand("gate", "Deranging multiplier family and verification");
  gate_cmd->add_option("-p", gate.p, "Prime modulus")->required()->check(kDecimal);
  gate_cmd->add_option("-b", gate.b, "Base")->required()->check(kDecimal);
  gate_cmd->add_flag("--exhaustive", gate.exhaustive, "Check every outside unit regardless of p");
  gate_cmd->add_option("--threshold", gate.threshold, "Exhaustive check bound")->check(kDecimal);
  add_common(gate_cmd, common);

  DeviationArgs dev;
  auto* dev_cmd = app.add_subcommand("deviation", "Collision deviation S_l(p)");
  dev_cmd->add_option("-p", dev.p, "Modulus")->required()->check(kDecimal);
  dev_cmd->add_option("-b", dev.b, "Base")->required()->check(kDecimal);
  dev_cmd->add_option("-l,--lag", dev.lag, "Lag")->check(kDecimal);
  dev_cmd->add_option("--method", dev.method)->check(CLI::IsMember({"direct", "formula", "both"}));
  add_common(dev_cmd, common);

  ClassesArgs classes;
  auto* classes_cmd = app.add_subcommand("classes", "Deviation over all units mod b^(l+1)");
  classes_cmd->add_option("-b", classes.b, "Base")->required()->check(kDecimal);
  classes_cmd->add_option("-l,--lag", classes.lag, "Lag")->check(kDecimal);
  classes_cmd->add_option("--check", classes.checks, "reflection, mean or none")
      ->delimiter(',')
      ->check(CLI::IsMember({"reflection", "mean", "none"}));
  add_common(classes_cmd, common);

  HalfGroupArgs half;
  auto* half_cmd = app.add_subcommand("halfgroup", "Wrapping-set sizes per good slice");
  half_cmd->add_option("-b", half.b, "Base")->required()->check(kDecimal);
  half_cmd->add_option("-l,--lag", half.lag, "Lag")->check(kDecimal);
  add_common(half_cmd, common);

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Verification campaign over a prime range");
  scan_cmd->add_option("-b,--bases", scan.bases, "Bases")->delimiter(',')->check(kDecimal);
  scan_cmd->add_option("-l,--lags", scan.lags, "Lags")->delimiter(',')->check(kDecimal);
  scan_cmd->add_option("--pmin", scan.p_min, "Smallest prime candidate")->check(kDecimal);
  scan_cmd->add_option("--pmax", scan.p_max, "Largest prime candidate")->check(kDecimal);
  scan_cmd->add_option("--checks", scan.checks, "Subset of gate,determination,reflection,halfgroup,linearization")
      ->delimiter(',')
      ->check(CLI::IsMember({"gate", "determination", "reflection", "halfgroup", "linearization"}));
  scan_cmd->add_option("--exhaustive-threshold", scan.threshold)->check(kDecimal);
  scan_cmd->add_option("-j,--jobs", scan.jobs, "Worker threads")->check(kDecimal);
  scan_cmd->add_option("--samples", scan.samples, "Linearization samples per (p, b)")->check(kDecimal);
  scan_cmd->add_option("--seed", scan.seed)->check(kDecimal);
  scan_cmd->add_option("--paper-table", scan.paper_table, "Reproduce preset table 1 or 2")
      ->check(CLI::IsMember({1, 2}));
  add_common(scan_cmd, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    session.open(common);
    if (count_cmd->parsed()) return cmd_count(session, count);
    if (gate_cmd->parsed()) return cmd_gate(session, gate);
    if (dev_cmd->parsed()) return cmd_deviation(session, dev);
    if (classes_cmd->parsed()) return cmd_classes(session, classes);
    if (half_cmd->parsed()) return cmd_halfgroup(session, half);
    if (scan_cmd->parsed()) return cmd_scan(session, scan, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace digitbin::cli
