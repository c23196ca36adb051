// arlab: prefixes, complexity tables, verification runs, Rauzy-graph export
// and the d-bonacci closed forms, all driven by eventually periodic directive
// sequences written as "preperiod:period".
//
// stdout carries only the data stream (symbols, CSV, JSON, or DOT);
// diagnostics go to stderr. Exit codes: 0 success, 1 verification
// disagreement, 2 parse or validity error, 3 budget exhaustion or
// instability.

#include <algorithm>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "arlab/analysis.hpp"
#include "arlab/complexity.hpp"
#include "arlab/dbonacci.hpp"
#include "arlab/directive.hpp"
#include "arlab/errors.hpp"
#include "arlab/generate.hpp"
#include "arlab/words.hpp"

namespace {

using arlab::Int;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kDisagreement = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct Options {
  std::string directive;
  int d = 0;
  std::uint64_t n_max = 0;
  std::uint64_t length = 0;
  std::string format;
  std::uint64_t budget = arlab::kDefaultBudget;
  std::uint64_t seed = 0;
  unsigned random_directives = 0;
  std::uint64_t rauzy_n = 0;
  std::int64_t corrupt_nrc = 0;
};

std::size_t env_default_budget() {
  const char* env = std::getenv("ARLAB_BUDGET");
  if (env == nullptr || *env == '\0') return arlab::kDefaultBudget;
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0' || env[0] == '-') {
    throw std::invalid_argument(
        std::string("ARLAB_BUDGET is not a symbol count: ") + env);
  }
  return static_cast<std::size_t>(v);
}

std::string resolve_format(const std::string& given,
                           std::initializer_list<const char*> allowed) {
  if (given.empty()) return *allowed.begin();
  for (const char* a : allowed) {
    if (given == a) return given;
  }
  std::string msg = "unsupported format '" + given + "'; expected";
  const char* sep = " ";
  for (const char* a : allowed) {
    msg += sep;
    msg += a;
    sep = " or ";
  }
  throw std::invalid_argument(msg);
}

json int_json(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (lo <= v && v <= hi) return static_cast<std::int64_t>(v);
  return v.str();
}

template <typename T>
json opt_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

json certificate_json(const arlab::WindowCertificate& c) {
  json j;
  j["start"] = c.start;
  j["length"] = c.length;
  j["endpoints_checked"] = c.endpoints_checked;
  j["right_special_endpoint"] = c.right_special_endpoint
                                    ? json(c.right_special_endpoint->str())
                                    : json(nullptr);
  j["left_special_endpoint"] = c.left_special_endpoint
                                   ? json(c.left_special_endpoint->str())
                                   : json(nullptr);
  return j;
}

json row_json(const arlab::TableRow& row) {
  json j;
  j["n"] = row.n;
  j["C"] = opt_json(row.c_oracle);
  j["nrC_formula"] = int_json(row.nrc_formula_value);
  j["nrC_oracle"] = opt_json(row.nrc_oracle_value);
  j["inrC_formula"] = int_json(row.inrc_formula_value);
  j["inrC_oracle"] = opt_json(row.inrc_oracle_value);
  j["R_oracle"] = opt_json(row.r_oracle);
  j["k"] = row.k;
  j["agree_nrc"] = opt_json(row.agree_nrc);
  j["agree_inrc"] = opt_json(row.agree_inrc);
  j["stable"] = row.stable;
  return j;
}

std::string fraction(std::size_t num, std::size_t den) {
  return std::to_string(num) + "/" + std::to_string(den);
}

int cmd_generate(const Options& o) {
  resolve_format(o.format, {"txt"});
  auto ds = arlab::DirectiveSequence::parse(o.directive, o.d);
  auto p = arlab::generate_prefix(ds, static_cast<std::size_t>(o.length),
                                  static_cast<std::size_t>(o.budget));
  std::cout << arlab::format_symbols(p.view(), ds.alphabet_size()) << '\n';
  return kOk;
}

int cmd_table(const Options& o) {
  std::string fmt = resolve_format(o.format, {"csv", "json"});
  auto ds = arlab::DirectiveSequence::parse(o.directive, o.d);
  arlab::TableOptions topt;
  topt.budget = static_cast<std::size_t>(o.budget);
  auto table = arlab::complexity_table(ds, o.n_max, topt);
  if (fmt == "csv") {
    std::cout << arlab::to_csv(table);
  } else {
    json rows = json::array();
    for (const auto& row : table.rows) rows.push_back(row_json(row));
    std::cout << rows.dump(2) << '\n';
  }
  return kOk;
}

struct RunReport {
  json report;
  std::size_t failures = 0;
  std::size_t stable = 0;
  std::size_t rows = 0;
};

// Formula-vs-oracle agreement plus the per-row invariants (factor count and
// the chain inrC <= nrC <= C <= R - n + 1), evaluated on stable rows only.
RunReport verify_directive(const arlab::DirectiveSequence& ds,
                           const Options& o) {
  arlab::TableOptions topt;
  topt.budget = static_cast<std::size_t>(o.budget);
  auto table = arlab::complexity_table(ds, o.n_max, topt);
  if (o.corrupt_nrc != 0) {
    for (auto& row : table.rows) {
      row.nrc_formula_value += o.corrupt_nrc;
      if (row.nrc_oracle_value) {
        row.agree_nrc = Int(*row.nrc_oracle_value) == row.nrc_formula_value;
      }
    }
  }
  const int d = ds.alphabet_size();
  json rows = json::array();
  json failures = json::array();
  for (const auto& row : table.rows) {
    rows.push_back(row_json(row));
    if (!row.stable) continue;
    if (row.agree_nrc && !*row.agree_nrc) {
      json f;
      f["n"] = row.n;
      f["kind"] = "nrc_formula_vs_oracle";
      f["formula"] = int_json(row.nrc_formula_value);
      f["oracle"] = opt_json(row.nrc_oracle_value);
      f["certificate"] =
          row.certificate ? certificate_json(*row.certificate) : json(nullptr);
      failures.push_back(std::move(f));
    }
    if (row.agree_inrc && !*row.agree_inrc) {
      json f;
      f["n"] = row.n;
      f["kind"] = "inrc_formula_vs_oracle";
      f["formula"] = int_json(row.inrc_formula_value);
      f["oracle"] = opt_json(row.inrc_oracle_value);
      failures.push_back(std::move(f));
    }
    if (row.c_oracle) {
      Int expected = Int(d - 1) * row.n + 1;
      if (Int(*row.c_oracle) != expected) {
        json f;
        f["n"] = row.n;
        f["kind"] = "factor_count";
        f["expected"] = int_json(expected);
        f["got"] = *row.c_oracle;
        failures.push_back(std::move(f));
      }
    }
    if (row.inrc_oracle_value && row.nrc_oracle_value && row.c_oracle &&
        row.r_oracle) {
      Int inrc(*row.inrc_oracle_value);
      Int nrc(*row.nrc_oracle_value);
      Int c(*row.c_oracle);
      Int rbound = Int(*row.r_oracle) - row.n + 1;
      if (!(inrc <= nrc && nrc <= c && c <= rbound)) {
        json f;
        f["n"] = row.n;
        f["kind"] = "chain_inequality";
        f["inrC"] = *row.inrc_oracle_value;
        f["nrC"] = *row.nrc_oracle_value;
        f["C"] = *row.c_oracle;
        f["R_minus_n_plus_1"] = int_json(rbound);
        failures.push_back(std::move(f));
      }
    }
  }
  RunReport out;
  out.failures = failures.size();
  out.stable = table.stable_rows();
  out.rows = table.rows.size();
  json rep;
  rep["directive"] = ds.str();
  rep["d"] = d;
  rep["n_max"] = o.n_max;
  rep["rows"] = std::move(rows);
  rep["failures"] = std::move(failures);
  rep["stable_fraction"] = fraction(out.stable, out.rows);
  out.report = std::move(rep);
  return out;
}

int cmd_verify(const Options& o) {
  resolve_format(o.format, {"json"});
  if (o.random_directives > 0) {
    if (o.d < 2) {
      throw std::invalid_argument(
          "--random-directives requires --d with d >= 2");
    }
    std::mt19937_64 rng(o.seed);
    json runs = json::array();
    std::size_t failures_total = 0;
    std::size_t stable_total = 0;
    std::size_t rows_total = 0;
    for (unsigned i = 0; i < o.random_directives; ++i) {
      auto ds = arlab::random_valid_directive(o.d, rng);
      auto run = verify_directive(ds, o);
      failures_total += run.failures;
      stable_total += run.stable;
      rows_total += run.rows;
      runs.push_back(std::move(run.report));
    }
    json rep;
    rep["d"] = o.d;
    rep["n_max"] = o.n_max;
    rep["seed"] = o.seed;
    rep["runs"] = std::move(runs);
    rep["failures_total"] = failures_total;
    rep["stable_fraction"] = fraction(stable_total, rows_total);
    std::cout << rep.dump(2) << '\n';
    return failures_total == 0 ? kOk : kDisagreement;
  }
  if (o.directive.empty()) {
    throw std::invalid_argument(
        "verify needs --directive or --random-directives");
  }
  auto ds = arlab::DirectiveSequence::parse(o.directive, o.d);
  auto run = verify_directive(ds, o);
  std::cout << run.report.dump(2) << '\n';
  return run.failures == 0 ? kOk : kDisagreement;
}

int cmd_rauzy(const Options& o) {
  resolve_format(o.format, {"dot"});
  auto ds = arlab::DirectiveSequence::parse(o.directive, o.d);
  std::size_t budget = static_cast<std::size_t>(o.budget);
  auto p = arlab::generate_prefix(ds, std::min<std::size_t>(budget, 64), budget);
  auto g = arlab::rauzy_graph(p, static_cast<std::size_t>(o.rauzy_n));
  std::cout << g.to_dot();
  return kOk;
}

int cmd_dbonacci(const Options& o) {
  resolve_format(o.format, {"csv"});
  arlab::DBonacciNumbers numbers(o.d);
  auto ds = arlab::dbonacci_directive(o.d);
  arlab::TableOptions topt;
  topt.budget = static_cast<std::size_t>(o.budget);
  auto table = arlab::complexity_table(ds, o.n_max, topt);
  std::cout << arlab::csv_header() << ",D_k,B_len_k,agree_generic\n";
  for (const auto& row : table.rows) {
    Int dk = numbers.at(static_cast<long long>(row.k));
    Int blen = arlab::bispecial_length_dbonacci(numbers, row.k);
    Int n(row.n);
    bool agree = arlab::nrc_dbonacci(o.d, n) == row.nrc_formula_value &&
                 arlab::inrc_dbonacci(o.d, n) == row.inrc_formula_value;
    std::cout << arlab::to_csv_row(row) << ',' << dk.str() << ',' << blen.str()
              << ',' << (agree ? "true" : "false") << '\n';
  }
  return kOk;
}

int run(int argc, char** argv) {
  Options o;
  o.budget = env_default_budget();

  CLI::App app{
      "Arnoux-Rauzy word laboratory: prefixes, complexity tables, "
      "verification runs, Rauzy graphs and d-bonacci closed forms"};
  app.require_subcommand(1);

  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--budget", o.budget,
                    "Prefix memory budget in symbols")
        ->capture_default_str();
    cmd->add_option("--format", o.format, "Output format");
  };

  CLI::App* generate = app.add_subcommand(
      "generate", "Print a prefix of the standard word of a directive");
  generate->add_option("--directive", o.directive,
                       "Directive sequence, written preperiod:period")
      ->required();
  generate->add_option("--length", o.length, "Number of symbols to print")
      ->required();
  generate->add_option("--d", o.d,
                       "Alphabet size (0 = infer from the directive)");
  add_common(generate);

  CLI::App* table = app.add_subcommand(
      "table", "Emit the complexity table for n = 1..n-max");
  table->add_option("--directive", o.directive,
                    "Directive sequence, written preperiod:period")
      ->required();
  table->add_option("--n-max", o.n_max, "Largest factor length")->required();
  table->add_option("--d", o.d,
                    "Alphabet size (0 = infer from the directive)");
  add_common(table);

  CLI::App* verify = app.add_subcommand(
      "verify", "Check the formulas against the oracles; JSON report");
  verify->add_option("--directive", o.directive,
                     "Directive sequence, written preperiod:period");
  verify->add_option("--n-max", o.n_max, "Largest factor length")->required();
  verify->add_option("--d", o.d, "Alphabet size");
  verify->add_option("--random-directives", o.random_directives,
                     "Verify this many random directives instead");
  verify->add_option("--seed", o.seed, "Seed for the random directives");
  verify->add_option("--corrupt-nrc-formula", o.corrupt_nrc, "")->group("");
  add_common(verify);

  CLI::App* rauzy =
      app.add_subcommand("rauzy", "Emit the order-n Rauzy graph as DOT");
  rauzy->add_option("--directive", o.directive,
                    "Directive sequence, written preperiod:period")
      ->required();
  rauzy->add_option("-n", o.rauzy_n, "Factor length (graph order)")
      ->required();
  rauzy->add_option("--d", o.d, "Alphabet size (0 = infer from the directive)");
  add_common(rauzy);

  CLI::App* dbonacci = app.add_subcommand(
      "dbonacci", "Closed-form complexity table for the d-bonacci word");
  dbonacci->add_option("--d", o.d, "Alphabet size")->required();
  dbonacci->add_option("--n-max", o.n_max, "Largest factor length")
      ->required();
  add_common(dbonacci);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (generate->parsed()) return cmd_generate(o);
  if (table->parsed()) return cmd_table(o);
  if (verify->parsed()) return cmd_verify(o);
  if (rauzy->parsed()) return cmd_rauzy(o);
  return cmd_dbonacci(o);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const arlab::BudgetError& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return kResource;
  } catch (const arlab::InstabilityError& e) {
    std::cerr << "instability: " << e.what() << '\n';
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kResource;
  }
}
