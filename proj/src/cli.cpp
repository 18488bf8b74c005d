#include "linnik/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "linnik/arith.hpp"
#include "linnik/errors.hpp"

namespace linnik {

// ---------------------------------------------------------------------------
// Serialization

Json to_json(const ConstantEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["abs_error"] = e.abs_error;
  j["direction"] = std::string(to_string(e.direction));
  return j;
}

Json to_json(const ExponentResult& r) {
  Json j;
  j["lambda"] = r.lambda;
  j["xi"] = r.xi;
  j["h"] = r.h;
  j["F"] = to_json(r.F);
  j["logF"] = to_json(r.logF);
  j["E"] = to_json(r.E);
  return j;
}

Json to_json(const TheoremReport& r) {
  Json j;
  j["preset_name"] = r.preset_name;
  j["grh"] = r.grh;
  j["theta"] = r.theta.str();
  j["lambda"] = r.lambda;
  j["xi"] = r.xi;
  j["h"] = r.h;
  j["E"] = to_json(r.exponent.E);
  j["F"] = to_json(r.exponent.F);
  j["required_E"] = to_json(Tracked::from(Rational(2) * r.theta - Rational(1)).two_sided());
  j["c0"] = to_json(r.c0);
  j["c1"] = r.c1;
  j["c2_upper"] = to_json(r.c2_upper);
  j["c2_lower"] = to_json(r.c2_lower);
  j["c2_used"] = to_json(r.c2_used);
  j["minor"] = to_json(r.minor);
  j["D"] = r.D;
  j["major"] = to_json(r.major);
  j["k_floor"] = r.k_floor;
  j["K_inequality"] = r.K_inequality;
  j["bound_by"] = r.bound_by;
  j["K_min"] = r.K_min;
  return j;
}

Json to_json(const VerifyReport& r, bool include_timing) {
  Json j;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["K"] = r.K;
  j["verified_count"] = r.verified_count;
  j["failures"] = r.failures;
  j["failure_count"] = r.failures.size();
  if (include_timing) j["elapsed_seconds"] = r.elapsed.count();
  return j;
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  auto join = [&](const std::string& key) { return prefix.empty() ? key : prefix + "." + key; };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, join(key), out);
  } else if (j.is_array()) {
    if (j.empty()) out.emplace_back(prefix, "");
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], join(std::to_string(i)), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string render(const Json& record, OutputFormat format) {
  if (format == OutputFormat::json) return record.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(record, "", rows);
  std::ostringstream os;
  if (format == OutputFormat::csv) {
    for (size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << csv_field(rows[i].first);
    os << "\n";
    for (size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << csv_field(rows[i].second);
    os << "\n";
  } else {
    for (const auto& [k, v] : rows) os << k << " = " << v << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Command dispatch

namespace {

struct Assertion {
  std::string op;
  double rhs = 0.0;

  static Assertion parse(const std::string& text) {
    for (const char* op : {">=", "<=", "==", "!=", ">", "<"}) {
      const std::string o(op);
      if (text.rfind(o, 0) == 0) {
        std::string rest = text.substr(o.size());
        size_t used = 0;
        double v = 0.0;
        try {
          v = std::stod(rest, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != rest.size()) break;
        return {o, v};
      }
    }
    throw CLI::ValidationError("--assert", "expected <op><number> with op one of >= <= == != > <, got '" + text + "'");
  }

  bool holds(double lhs) const {
    if (op == ">=") return lhs >= rhs;
    if (op == "<=") return lhs <= rhs;
    if (op == "==") return lhs == rhs;
    if (op == "!=") return lhs != rhs;
    if (op == ">") return lhs > rhs;
    return lhs < rhs;
  }
};

/// The record a subcommand produced plus the single value --assert tests.
struct Outcome {
  Json record;
  double headline = 0.0;
  std::string headline_name;
};

struct Common {
  std::string format = "text";
  std::string assertion;
  unsigned threads = 1;
};

unsigned default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      const long v = std::stol(env);
      if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

OutputFormat parse_format(const std::string& f) {
  if (f == "json") return OutputFormat::json;
  if (f == "csv") return OutputFormat::csv;
  return OutputFormat::text;
}

ExpSumTable table_for(const RunConfig& cfg) {
  std::optional<std::filesystem::path> cache;
  if (cfg.table_cache) cache = *cfg.table_cache;
  return load_or_build_table(cache, cfg.h);
}

Json estimate_record(const ConstantEstimate& e) { return to_json(e); }

void merge_into(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verified constants and desk-scale checks for two primes plus K powers of two"};
  app.name("linnik");
  // --h is the window length, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1, 1);

  RunConfig cfg;
  Common common;
  common.threads = default_threads();
  std::function<Outcome()> action;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    sub->add_option("--assert", common.assertion, "Check the headline value, e.g. '>=0.66'; exit 1 if it fails");
    sub->add_option("--threads", common.threads, "Worker threads (default from $LINNIK_THREADS)")
        ->check(CLI::Range(1u, 1024u));
  };
  auto add_table_opts = [&](CLI::App* sub) {
    sub->add_option("--h", cfg.h, "Window length h of the dyadic table")
        ->check(CLI::Range(1u, kMaxTableH))
        ->capture_default_str();
    sub->add_option("--table-cache", cfg.table_cache, "Binary cache file for the dyadic table");
  };

  // c0 ----------------------------------------------------------------------
  auto* c0 = app.add_subcommand("c0", "Lower bound for the twin-prime-type product C0");
  c0->add_option("--prime-limit", cfg.prime_limit, "Largest prime in the partial product")->capture_default_str();
  add_common(c0);
  c0->callback([&] {
    action = [&] {
      Outcome o;
      const ConstantEstimate partial = c0_partial_product(cfg.prime_limit);
      const ConstantEstimate bound = compute_c0(cfg.prime_limit);
      o.record["command"] = "c0";
      o.record["prime_limit"] = cfg.prime_limit;
      o.record["partial_product"] = estimate_record(partial);
      o.record["c0"] = estimate_record(bound);
      o.headline = bound.value;
      o.headline_name = "c0.value";
      return o;
    };
  });

  // c2 ----------------------------------------------------------------------
  auto* c2 = app.add_subcommand("c2", "Upper and lower bounds for C2");
  c2->add_option("--big-m", cfg.c2_M, "Cutoff M of the kappa partial sum")->capture_default_str();
  c2->add_option("--tail", cfg.tail_coefficient, "Coefficient of (1 + log M)/M")->capture_default_str();
  c2->add_option("--lower-limit", cfg.c2_lower_limit, "Truncation point of the lower bound")->capture_default_str();
  c2->add_option("--prime-limit", cfg.prime_limit, "Prime limit for the C0 used by the implied tail")
      ->capture_default_str();
  add_common(c2);
  c2->callback([&] {
    action = [&] {
      Outcome o;
      const ConstantEstimate partial = kappa_partial_sum(build_kappa_table(cfg.c2_M));
      const ConstantEstimate upper = c2_upper(cfg.c2_M, cfg.tail_coefficient);
      const ConstantEstimate lower = c2_lower(cfg.c2_lower_limit);
      const ConstantEstimate implied = implied_tail_coefficient(compute_c0(cfg.prime_limit));
      o.record["command"] = "c2";
      o.record["big_m"] = cfg.c2_M;
      o.record["tail_coefficient"] = cfg.tail_coefficient;
      o.record["kappa_partial_sum"] = estimate_record(partial);
      o.record["c2_upper"] = estimate_record(upper);
      o.record["implied_tail_coefficient"] = estimate_record(implied);
      o.record["c2_upper_implied_tail"] = estimate_record(c2_upper(cfg.c2_M, implied.value));
      o.record["c2_lower"] = estimate_record(lower);
      o.headline = upper.value;
      o.headline_name = "c2_upper.value";
      return o;
    };
  });

  // kappa -------------------------------------------------------------------
  auto* kappa = app.add_subcommand("kappa", "Exact kappa(m) table via Moebius inversion");
  kappa->add_option("--big-m", cfg.c2_M, "Table covers 1 <= m < M")->check(CLI::Range(1u, 64u))->capture_default_str();
  add_common(kappa);
  kappa->callback([&] {
    action = [&] {
      Outcome o;
      const KappaTable table = build_kappa_table(cfg.c2_M);
      o.record["command"] = "kappa";
      o.record["big_m"] = cfg.c2_M;
      Json entries = Json::array();
      for (const auto& [m, k] : table.kappa) {
        Json e;
        e["m"] = m;
        e["kappa"] = k.str();
        e["value"] = estimate_record(Tracked::from(k).two_sided());
        entries.push_back(e);
      }
      o.record["kappa"] = entries;
      const ConstantEstimate partial = kappa_partial_sum(table);
      o.record["partial_sum"] = estimate_record(partial);
      o.headline = partial.value;
      o.headline_name = "partial_sum.value";
      return o;
    };
  });

  // major -------------------------------------------------------------------
  unsigned major_D = 5, major_K = 7;
  int k_floor = kSingularSeriesKFloor;
  auto* major = app.add_subcommand("major", "Major-arc singular-series constant");
  major->add_option("--D", major_D, "Odd cutoff D")->capture_default_str();
  major->add_option("--K", major_K, "Number of powers of two")->capture_default_str();
  major->add_option("--k-floor", k_floor, "Smallest K accepted")->capture_default_str();
  add_common(major);
  major->callback([&] {
    action = [&] {
      Outcome o;
      const ConstantEstimate m = major_arc_constant(major_D, major_K, static_cast<unsigned>(std::max(k_floor, 1)));
      o.record["command"] = "major";
      o.record["D"] = major_D;
      o.record["K"] = major_K;
      o.record["major"] = estimate_record(m);
      o.headline = m.value;
      o.headline_name = "major.value";
      return o;
    };
  });

  // minor -------------------------------------------------------------------
  std::optional<double> minor_c0, minor_c2;
  double minor_c1 = kChenC1;
  auto* minor = app.add_subcommand("minor", "Minor-arc constant (C1 - 2) C2 + log 2 / C0");
  minor->add_option("--preset", cfg.preset, "paper or elsholtz")->capture_default_str();
  minor->add_option("--c0", minor_c0, "C0 lower bound (default: computed)");
  minor->add_option("--c1", minor_c1, "Chen's constant C1")->capture_default_str();
  minor->add_option("--c2", minor_c2, "C2 upper bound (default: preset override or computed)");
  minor->add_option("--prime-limit", cfg.prime_limit)->capture_default_str();
  minor->add_option("--big-m", cfg.c2_M)->capture_default_str();
  minor->add_option("--tail", cfg.tail_coefficient)->capture_default_str();
  add_common(minor);
  minor->callback([&] {
    action = [&] {
      Outcome o;
      const ConfigPreset preset = ConfigPreset::by_name(cfg.preset);
      const ConstantEstimate c0v =
          minor_c0 ? ConstantEstimate::exact(*minor_c0, Direction::lower_bound) : compute_c0(cfg.prime_limit);
      ConstantEstimate c2v;
      if (minor_c2) {
        c2v = ConstantEstimate::exact(*minor_c2, Direction::upper_bound);
      } else if (preset.C2_upper_override) {
        c2v = ConstantEstimate::exact(*preset.C2_upper_override, Direction::upper_bound);
      } else {
        c2v = c2_upper(cfg.c2_M, cfg.tail_coefficient);
      }
      const ConstantEstimate m = minor_arc_constant(c0v, minor_c1, c2v);
      o.record["command"] = "minor";
      o.record["preset"] = preset.name;
      o.record["c0"] = estimate_record(c0v);
      o.record["c1"] = minor_c1;
      o.record["c2"] = estimate_record(c2v);
      o.record["minor"] = estimate_record(m);
      o.headline = m.value;
      o.headline_name = "minor.value";
      return o;
    };
  });

  // table -------------------------------------------------------------------
  auto* table_cmd = app.add_subcommand("table", "Build (and optionally cache) Re T_h(r/2^h)");
  add_table_opts(table_cmd);
  unsigned show = 8;
  table_cmd->add_option("--show", show, "Number of leading entries to print")->capture_default_str();
  add_common(table_cmd);
  table_cmd->callback([&] {
    action = [&] {
      Outcome o;
      const ExpSumTable t = table_for(cfg);
      double sum = 0.0, max_abs = 0.0, max_asym = 0.0;
      for (size_t r = 0; r < t.size(); ++r) {
        sum += t[r];
        max_abs = std::max(max_abs, std::abs(t[r]));
        if (r != 0) max_asym = std::max(max_asym, std::abs(t[r] - t[t.size() - r]));
      }
      o.record["command"] = "table";
      o.record["h"] = t.h();
      o.record["size"] = t.size();
      o.record["entry_error"] = t.entry_error();
      o.record["sum"] = sum;
      o.record["max_abs"] = max_abs;
      o.record["max_asymmetry"] = max_asym;
      Json head = Json::array();
      for (size_t r = 0; r < std::min<size_t>(show, t.size()); ++r) head.push_back(t[r]);
      o.record["values"] = head;
      o.headline = std::abs(sum);
      o.headline_name = "|sum|";
      return o;
    };
  });

  // bigf --------------------------------------------------------------------
  double xi = kXiUnconditional;
  auto* bigf = app.add_subcommand("bigf", "Upper bound for F(xi, h)");
  bigf->add_option("--xi", xi, "Exponential-moment parameter")->capture_default_str();
  add_table_opts(bigf);
  add_common(bigf);
  bigf->callback([&] {
    action = [&] {
      Outcome o;
      const ConstantEstimate F = big_f(xi, table_for(cfg));
      o.record["command"] = "bigf";
      o.record["xi"] = xi;
      o.record["h"] = cfg.h;
      o.record["F"] = estimate_record(F);
      o.headline = F.value;
      o.headline_name = "F.value";
      return o;
    };
  });

  // exponent ----------------------------------------------------------------
  double lambda = kLambdaUnconditional;
  auto* exponent = app.add_subcommand("exponent", "Lower bound for E(lambda) at a given xi");
  exponent->add_option("--lambda", lambda)->capture_default_str();
  exponent->add_option("--xi", xi)->capture_default_str();
  add_table_opts(exponent);
  add_common(exponent);
  exponent->callback([&] {
    action = [&] {
      Outcome o;
      const ExponentResult r = exponent_E(lambda, xi, table_for(cfg));
      o.record["command"] = "exponent";
      merge_into(o.record, to_json(r));
      o.headline = r.E.value;
      o.headline_name = "E.value";
      return o;
    };
  });

  // optimize ----------------------------------------------------------------
  double tol = 1e-9;
  auto* optimize = app.add_subcommand("optimize", "Maximise E(lambda) over xi");
  optimize->add_option("--lambda", lambda)->capture_default_str();
  optimize->add_option("--tol", tol, "Golden-section tolerance on xi")->capture_default_str();
  add_table_opts(optimize);
  add_common(optimize);
  optimize->callback([&] {
    action = [&] {
      Outcome o;
      const XiOptimum opt = optimize_xi(lambda, table_for(cfg), tol);
      o.record["command"] = "optimize";
      o.record["xi_star"] = opt.xi_star;
      o.record["result"] = to_json(opt.result);
      o.headline = opt.result.E.value;
      o.headline_name = "result.E.value";
      return o;
    };
  });

  // measure-bound -----------------------------------------------------------
  std::optional<double> mb_xi;
  unsigned L = 24;
  double varpi = 0.01;
  double mb_lambda = 0.8;
  auto* mbound = app.add_subcommand("measure-bound", "Explicit upper bound for meas{|T_L| >= lambda L}");
  mbound->add_option("--lambda", mb_lambda)->capture_default_str();
  mbound->add_option("--xi", mb_xi, "Default: the optimised xi");
  mbound->add_option("--L", L)->capture_default_str();
  mbound->add_option("--varpi", varpi)->capture_default_str();
  add_table_opts(mbound);
  add_common(mbound);
  mbound->callback([&] {
    action = [&] {
      Outcome o;
      const ExpSumTable t = table_for(cfg);
      MeasureBoundParams p;
      p.lambda = mb_lambda;
      p.xi = mb_xi ? *mb_xi : optimize_xi(std::max(mb_lambda, 1e-6), t).xi_star;
      p.h = cfg.h;
      p.L = L;
      p.varpi = varpi;
      const double log_bound = explicit_measure_log_bound(p, t);
      const double bound = explicit_measure_bound(p, t);
      o.record["command"] = "measure-bound";
      o.record["lambda"] = p.lambda;
      o.record["xi"] = p.xi;
      o.record["h"] = p.h;
      o.record["L"] = p.L;
      o.record["varpi"] = p.varpi;
      o.record["big_m"] = p.rotations();
      o.record["log_bound"] = estimate_record(ConstantEstimate::exact(log_bound, Direction::upper_bound));
      o.record["bound"] = estimate_record(ConstantEstimate::exact(bound, Direction::upper_bound));
      o.headline = bound;
      o.headline_name = "bound.value";
      return o;
    };
  });

  // measure-mc --------------------------------------------------------------
  uint64_t samples = 1'000'000;
  auto* mmc = app.add_subcommand("measure-mc", "Monte-Carlo estimate of meas{|T_L| >= lambda L}");
  mmc->add_option("--lambda", mb_lambda)->capture_default_str();
  mmc->add_option("--L", L)->capture_default_str();
  mmc->add_option("--samples", samples)->capture_default_str();
  mmc->add_option("--seed", cfg.seed)->capture_default_str();
  add_common(mmc);
  mmc->callback([&] {
    action = [&] {
      Outcome o;
      const MonteCarloEstimate mc = measure_mc(mb_lambda, L, samples, cfg.seed, common.threads);
      o.record["command"] = "measure-mc";
      o.record["lambda"] = mb_lambda;
      o.record["L"] = L;
      o.record["samples"] = mc.samples;
      o.record["seed"] = cfg.seed;
      o.record["generator"] = "mt19937_64/splitmix64-blocks";
      o.record["hits"] = mc.hits;
      o.record["estimate"] = estimate_record(ConstantEstimate::exact(mc.estimate, Direction::two_sided));
      o.record["stderr"] = mc.std_error;
      o.headline = mc.estimate;
      o.headline_name = "estimate.value";
      return o;
    };
  });

  // solve-k -----------------------------------------------------------------
  double sk_minor = 13.968, sk_major = 2.7895;
  auto* solvek = app.add_subcommand("solve-k", "Least K with minor * lambda^(K-2) < major");
  solvek->add_option("--minor", sk_minor)->capture_default_str();
  solvek->add_option("--major", sk_major)->capture_default_str();
  solvek->add_option("--lambda", lambda)->capture_default_str();
  solvek->add_option("--k-floor", k_floor)->capture_default_str();
  add_common(solvek);
  solvek->callback([&] {
    action = [&] {
      Outcome o;
      const int K = solve_k(sk_minor, sk_major, lambda, k_floor);
      o.record["command"] = "solve-k";
      o.record["minor"] = sk_minor;
      o.record["major"] = sk_major;
      o.record["lambda"] = lambda;
      o.record["k_floor"] = k_floor;
      o.record["threshold"] = 2.0 + std::log(sk_minor / sk_major) / std::log(1.0 / lambda);
      o.record["K"] = K;
      o.headline = K;
      o.headline_name = "K";
      return o;
    };
  });

  // report ------------------------------------------------------------------
  bool grh = false, search = false;
  auto* report = app.add_subcommand("report", "End-to-end computation of the minimal K");
  report->add_option("--preset", cfg.preset, "paper or elsholtz")->capture_default_str();
  report->add_flag("--grh", grh, "Use the GRH exponent theta = 3/4");
  report->add_flag("--search-lambda", search, "Search for the least admissible lambda");
  report->add_option("--prime-limit", cfg.prime_limit)->capture_default_str();
  report->add_option("--big-m", cfg.c2_M)->capture_default_str();
  report->add_option("--c2-lower-limit", cfg.c2_lower_limit)->capture_default_str();
  report->add_option("--tail", cfg.tail_coefficient)->capture_default_str();
  report->add_option("--k-floor", k_floor, "7, or 9 for the prime-lemma hypothesis")->capture_default_str();
  add_table_opts(report);
  add_common(report);
  report->callback([&] {
    action = [&] {
      Outcome o;
      ReportOptions ro;
      ro.h = cfg.h;
      ro.prime_limit = cfg.prime_limit;
      ro.c2_M = cfg.c2_M;
      ro.c2_lower_limit = cfg.c2_lower_limit;
      ro.tail_coefficient = cfg.tail_coefficient;
      ro.k_floor = k_floor;
      ro.search_lambda = search;
      const TheoremReport r = full_report(ConfigPreset::by_name(cfg.preset), grh, ro, table_for(cfg));
      o.record["command"] = "report";
      merge_into(o.record, to_json(r));
      o.headline = r.K_min;
      o.headline_name = "K_min";
      return o;
    };
  });

  // goldbach ----------------------------------------------------------------
  uint64_t lo = 60, hi = 1'000'000;
  unsigned gK = 13;
  bool nu_zero = false, timing = false;
  std::string witness_path;
  auto* goldbach = app.add_subcommand("goldbach", "Check every even N in [lo, hi] is p + p' + K powers of two");
  goldbach->add_option("--lo", lo)->capture_default_str();
  goldbach->add_option("--hi", hi)->capture_default_str();
  goldbach->add_option("--K", gK)->capture_default_str();
  goldbach->add_flag("--nu-zero", nu_zero, "Allow the power 2^0 = 1");
  goldbach->add_flag("--timing", timing, "Include elapsed time (breaks byte-identical output)");
  goldbach->add_option("--witnesses", witness_path, "Write 'N p p' e1..eK' lines to this file");
  add_common(goldbach);
  goldbach->callback([&] {
    action = [&] {
      Outcome o;
      VerifyOptions vo;
      vo.threads = common.threads;
      vo.convention.min_exponent = nu_zero ? 0 : 1;
      vo.collect_witnesses = !witness_path.empty();
      const VerifyReport r = verify_range(lo, hi, gK, vo);
      if (!witness_path.empty()) {
        std::ofstream wf(witness_path);
        if (!wf) throw std::runtime_error("cannot write witnesses to " + witness_path);
        write_witnesses(wf, r.witnesses);
      }
      o.record["command"] = "goldbach";
      merge_into(o.record, to_json(r, timing));
      o.record["min_exponent"] = vo.convention.min_exponent;
      o.record["primes"] = "unrestricted (p >= 2)";
      o.headline = static_cast<double>(r.failures.size());
      o.headline_name = "failure_count";
      return o;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  std::optional<Assertion> assertion;
  try {
    if (!common.assertion.empty()) assertion = Assertion::parse(common.assertion);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Outcome outcome;
  try {
    outcome = action();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  out << render(outcome.record, parse_format(common.format));
  if (assertion && !assertion->holds(outcome.headline)) {
    err << "assertion failed: " << outcome.headline_name << " = " << Json(outcome.headline).dump() << " is not "
        << assertion->op << " " << Json(assertion->rhs).dump() << "\n";
    return kExitAssertionFailed;
  }
  return kExitOk;
}

}  // namespace linnik
