#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "randnet/channel.hpp"
#include "randnet/ensemble.hpp"
#include "randnet/errors.hpp"
#include "randnet/exactprob.hpp"
#include "randnet/oracles.hpp"
#include "randnet/prob.hpp"

namespace randnet::cli {

namespace {

const char* const kCurvePList = "2/3,1/2,3/7,2/5,1/3,1/5";
const char* const kEvolvePList = "0.2,0.4,0.6,0.8,0.95";

struct RunConfig {
  int n = 0;
  int n_max = 0;
  std::string p;
  std::string p_list;
  std::uint64_t samples = 1000000;
  int r_max = 100;
  std::uint64_t seed = kDefaultSeed;
  std::string mode;
  std::uint64_t budget = kDefaultBudget;
  std::string out;
  std::string format = "csv";
  int precision = -1;
  int threads = 0;
  std::string state = "zero";
};

enum class CellKind { number, text };

struct Table {
  std::vector<std::string> columns;
  std::vector<CellKind> kinds;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      nlohmann::ordered_json records = nlohmann::ordered_json::array();
      for (const auto& row : rows) {
        nlohmann::ordered_json record = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < columns.size(); ++c) {
          record[columns[c]] = kinds[c] == CellKind::number ? nlohmann::ordered_json::parse(row[c])
                                                            : nlohmann::ordered_json(row[c]);
        }
        records.push_back(std::move(record));
      }
      os << records.dump(2) << '\n';
      return;
    }
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
      os << '\n';
    }
  }
};

struct Sink {
  std::ostream& out;
  const RunConfig& config;

  void emit(const Table& table) const {
    if (config.out.empty()) {
      table.write(out, config.format);
      return;
    }
    write_file(config.out, table);
  }

  void write_file(const std::filesystem::path& path, const Table& table) const {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file " + path.string());
    table.write(file, config.format);
  }
};

std::string checked(double v, int digits) {
  if (!std::isfinite(v)) throw NumericalFailure("non-finite value in output");
  return format_significant(v, digits);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in p list: " + text);
    items.push_back(item);
  }
  if (items.empty()) throw std::invalid_argument("empty p list");
  return items;
}

/// --p wins over --p-list; otherwise the list (or its default).
std::vector<std::string> p_texts(const RunConfig& config, const char* default_list) {
  if (!config.p.empty()) return {config.p};
  return split_list(config.p_list.empty() ? std::string(default_list) : config.p_list);
}

struct ProbChoice {
  std::string text;
  ParsedProb parsed;
};

std::vector<ProbChoice> parse_all(const std::vector<std::string>& texts) {
  std::vector<ProbChoice> out;
  for (const auto& t : texts) out.push_back({t, parse_prob(t)});
  return out;
}

/// Exact unless a decimal p was given or --mode float; decimals warn once each.
bool use_exact(const RunConfig& config, const std::vector<ProbChoice>& ps, std::ostream& err) {
  if (config.mode == "exact") return true;
  if (config.mode == "float") return false;
  if (!config.mode.empty() && config.mode != "auto") {
    throw std::invalid_argument("--mode must be auto, exact or float");
  }
  bool exact = true;
  for (const auto& p : ps) {
    if (!p.parsed.is_exact) {
      err << "warning: p=" << p.text
          << " is a decimal and is evaluated in floating point; write it as a/b for exact arithmetic\n";
      exact = false;
    }
  }
  return exact;
}

void guard_size(bool exact, int n_max) {
  if (exact && n_max > kExactMaxN) {
    throw CostGuardError("exact evaluation is limited to n <= " + std::to_string(kExactMaxN) +
                         "; use --mode float for larger n");
  }
  if (!exact && n_max > kFloatMaxN) {
    throw CostGuardError("floating-point evaluation is limited to n <= " + std::to_string(kFloatMaxN));
  }
}

int cmd_pc_table(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const int n_max = config.n_max > 0 ? config.n_max : 7;
  const int decimals = config.precision >= 0 ? config.precision : 4;
  if (n_max < 2) throw std::invalid_argument("--nmax must be at least 2");
  const auto ps = parse_all({config.p.empty() ? std::string("1/2") : config.p});
  const ProbChoice& p = ps.front();
  require_interior(p.parsed.exact.value());
  const bool exact = use_exact(config, ps, err);
  guard_size(exact, n_max);

  Table table{{"n", "P_C"}, {CellKind::number, CellKind::number}, {}};
  if (exact) {
    ExactSession session(p.parsed.exact.value());
    for (int n = 2; n <= n_max; ++n) {
      table.rows.push_back({std::to_string(n), round_decimal(session.strongly_connected(n), decimals)});
    }
  } else {
    FloatSession session(p.parsed.approx);
    for (int n = 2; n <= n_max; ++n) {
      const double v = session.strongly_connected(n);
      if (!std::isfinite(v)) throw NumericalFailure("non-finite probability at n=" + std::to_string(n));
      table.rows.push_back({std::to_string(n), round_decimal(mpq_class(v), decimals)});
    }
  }
  Sink{out, config}.emit(table);
  return kExitOk;
}

Table curve_table(const ProbChoice& p, bool exact, int n_max, int digits) {
  const PcCurve curve = exact ? pc_curve(n_max, p.parsed.exact) : pc_curve(n_max, p.parsed.approx);
  Table table{{"n", "p", "P_C", "lower_bound"},
              {CellKind::number, CellKind::text, CellKind::number, CellKind::number},
              {}};
  for (const CurvePoint& point : curve.points) {
    if (point.n < 2) continue;
    if (point.pc < -1e-9 || point.pc > 1 + 1e-9) {
      throw NumericalFailure("probability outside [0,1] at n=" + std::to_string(point.n));
    }
    table.rows.push_back({std::to_string(point.n), p.text, checked(point.pc, digits), checked(point.lower_bound, digits)});
  }
  return table;
}

int cmd_pc_curve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const int n_max = config.n_max > 0 ? config.n_max : kExactMaxN;
  const int digits = config.precision > 0 ? config.precision : 6;
  if (n_max < 2) throw std::invalid_argument("--nmax must be at least 2");
  const auto ps = parse_all(p_texts(config, kCurvePList));
  for (const auto& p : ps) require_interior(p.parsed.exact.value());
  const bool exact = use_exact(config, ps, err);
  guard_size(exact, n_max);

  std::vector<Table> tables;
  for (const auto& p : ps) tables.push_back(curve_table(p, exact, n_max, digits));

  Sink sink{out, config};
  if (config.out.empty()) {
    Table merged = tables.front();
    for (std::size_t i = 1; i < tables.size(); ++i) {
      merged.rows.insert(merged.rows.end(), tables[i].rows.begin(), tables[i].rows.end());
    }
    sink.emit(merged);
    return kExitOk;
  }
  const std::filesystem::path dir(config.out);
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::string name = curve_file_name(ps[i].text);
    if (config.format == "json") name.replace(name.size() - 3, 3, "json");
    sink.write_file(dir / name, tables[i]);
  }
  return kExitOk;
}

int cmd_pc_mc(const RunConfig& config, std::ostream& out, std::ostream&) {
  const int n = config.n > 0 ? config.n : 7;
  const int digits = config.precision > 0 ? config.precision : 6;
  const std::string p_text = config.p.empty() ? "1/2" : config.p;
  const ParsedProb p = parse_prob(p_text);
  if (static_cast<double>(config.samples) * n * n > kMonteCarloWorkLimit) {
    throw CostGuardError("Monte Carlo work samples * n^2 exceeds 1e13");
  }
  const McEstimate e = estimate_pc_monte_carlo(n, p.approx, config.samples, config.seed);
  Table table{{"n", "p", "samples", "hits", "estimate", "lo", "hi", "confidence"},
              {CellKind::number, CellKind::text, CellKind::number, CellKind::number, CellKind::number,
               CellKind::number, CellKind::number, CellKind::number},
              {}};
  table.rows.push_back({std::to_string(n), p_text, std::to_string(e.samples), std::to_string(e.hits),
                        checked(e.estimate, digits), checked(e.lo, digits), checked(e.hi, digits),
                        checked(e.confidence, digits)});
  Sink{out, config}.emit(table);
  return kExitOk;
}

int cmd_pc_bound(const RunConfig& config, std::ostream& out, std::ostream&) {
  const int digits = config.precision > 0 ? config.precision : 6;
  int n_lo = 2;
  int n_hi = config.n_max > 0 ? config.n_max : 50;
  if (config.n > 0) n_lo = n_hi = config.n;
  if (n_lo < 2) throw std::invalid_argument("the bound needs n >= 2");
  const auto ps = parse_all(p_texts(config, kCurvePList));
  Table table{{"n", "p", "lower_bound"}, {CellKind::number, CellKind::text, CellKind::number}, {}};
  for (const auto& p : ps) {
    if (!(p.parsed.approx > 0.0)) throw std::domain_error("p must lie in (0,1]");
    for (int n = n_lo; n <= n_hi; ++n) {
      table.rows.push_back({std::to_string(n), p.text, checked(lower_bound_pc(n, p.parsed.approx), digits)});
    }
  }
  Sink{out, config}.emit(table);
  return kExitOk;
}

Table trace_table(const std::vector<ProbChoice>& ps, const std::vector<std::vector<TracePoint>>& traces,
                  int digits) {
  const bool single = ps.size() == 1;
  Table table;
  if (single) {
    table.columns = {"r", "D"};
    table.kinds = {CellKind::number, CellKind::number};
  } else {
    table.columns = {"r", "p", "D"};
    table.kinds = {CellKind::number, CellKind::text, CellKind::number};
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (const TracePoint& t : traces[i]) {
      if (single) {
        table.rows.push_back({std::to_string(t.r), checked(t.distance, digits)});
      } else {
        table.rows.push_back({std::to_string(t.r), ps[i].text, checked(t.distance, digits)});
      }
    }
  }
  return table;
}

std::vector<ProbChoice> evolve_probs(const RunConfig& config) {
  const auto ps = parse_all(p_texts(config, kEvolvePList));
  return ps;
}

int cmd_evolve_dynamic(const RunConfig& config, std::ostream& out, std::ostream&) {
  const int n = config.n > 0 ? config.n : 4;
  const int digits = config.precision > 0 ? config.precision : 6;
  if (config.r_max < 0) throw std::invalid_argument("--rmax must be non-negative");
  if (config.r_max > kDynamicMaxSteps) throw CostGuardError("dynamic evolution is limited to 1e6 steps");
  const auto ps = evolve_probs(config);
  std::vector<std::vector<TracePoint>> traces;
  for (const auto& p : ps) traces.push_back(dynamic_trace(n, p.parsed.approx, config.r_max));
  Sink{out, config}.emit(trace_table(ps, traces, digits));
  return kExitOk;
}

int cmd_evolve_static(const RunConfig& config, std::ostream& out, std::ostream&) {
  const int n = config.n > 0 ? config.n : 4;
  const int digits = config.precision > 0 ? config.precision : 6;
  if (config.r_max < 0) throw std::invalid_argument("--rmax must be non-negative");
  if (config.r_max > kStaticMaxSteps) throw CostGuardError("static evolution is limited to 1e5 steps");
  StaticOptions options;
  options.budget = config.budget;
  options.seed = config.seed;
  if (config.mode.empty() || config.mode == "exhaustive") {
    options.mode = StaticMode::exhaustive;
  } else if (config.mode == "sampled") {
    options.mode = StaticMode::sampled;
  } else {
    throw std::invalid_argument("--mode must be exhaustive or sampled");
  }
  const auto ps = evolve_probs(config);
  std::vector<double> values;
  for (const auto& p : ps) values.push_back(p.parsed.approx);
  const auto traces = static_traces(n, values, config.r_max, options);
  Sink{out, config}.emit(trace_table(ps, traces, digits));
  return kExitOk;
}

PauliStateVector read_state_file(int n, const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("unknown state name or unreadable file: " + path);
  std::vector<double> values;
  std::string token;
  while (file >> token) {
    std::stringstream ss(token);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      if (piece.empty()) continue;
      std::size_t used = 0;
      const double v = std::stod(piece, &used);
      if (used != piece.size()) throw std::invalid_argument("malformed coefficient: " + piece);
      values.push_back(v);
    }
  }
  const std::size_t dim = std::size_t{1} << (2 * n);
  if (values.size() != dim) {
    throw std::invalid_argument("state file must hold 4^n = " + std::to_string(dim) + " coefficients");
  }
  PauliStateVector rho{n, Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(dim))};
  if (std::abs(rho.trace() - 1.0) > 1e-12) throw std::invalid_argument("state coefficients must have unit trace");
  return rho;
}

int cmd_asymptote(const RunConfig& config, std::ostream& out, std::ostream&) {
  const int n = config.n > 0 ? config.n : 4;
  const int digits = config.precision > 0 ? config.precision : 6;
  if (n < 2) throw std::invalid_argument("the asymptotic state needs n >= 2");
  if (n > kMaxQubits) throw CostGuardError("qubit networks are limited to n <= " + std::to_string(kMaxQubits));
  const bool named = config.state == "zero" || config.state == "plus" || config.state == "mixed";
  const PauliStateVector rho = named ? named_state(n, config.state) : read_state_file(n, config.state);

  // Exact product of the rational map with the coefficients (each double is a rational).
  const RationalTransferMatrix map = asymptotic_channel_rational(n);
  const std::size_t dim = std::size_t{1} << (2 * n);
  std::vector<mpq_class> coeffs(dim);
  for (std::size_t b = 0; b < dim; ++b) coeffs[b] = mpq_class(rho.coeffs[static_cast<Eigen::Index>(b)]);
  Table table{{"index", "pauli", "coefficient"}, {CellKind::number, CellKind::text, CellKind::number}, {}};
  for (std::size_t a = 0; a < dim; ++a) {
    mpq_class sum = 0;
    for (std::size_t b = 0; b < dim; ++b) {
      const long long num = map.numerators[a * dim + b];
      if (num != 0 && coeffs[b] != 0) sum += mpq_class(mpz_class(std::to_string(num))) * coeffs[b];
    }
    sum /= mpz_class(std::to_string(map.denominator));
    table.rows.push_back({std::to_string(a), PauliString(n, a).word(), checked(sum.get_d(), digits)});
  }
  Sink{out, config}.emit(table);
  return kExitOk;
}

}  // namespace

std::string round_decimal(const mpq_class& v, int decimals) {
  if (decimals < 0) throw std::invalid_argument("decimal count must be non-negative");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  const mpq_class scaled = abs(v) * scale + mpq_class(1, 2);
  mpz_class digits;
  mpz_fdiv_q(digits.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  std::string text = digits.get_str();
  if (static_cast<int>(text.size()) <= decimals) text.insert(0, static_cast<std::size_t>(decimals + 1) - text.size(), '0');
  if (decimals > 0) text.insert(text.size() - static_cast<std::size_t>(decimals), ".");
  if (v < 0 && digits != 0) text.insert(0, "-");
  return text;
}

std::string format_significant(double v, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, v);
  return buffer;
}

std::string curve_file_name(std::string_view p_text) {
  std::string name(p_text);
  for (char& c : name) {
    if (c == '/') c = '-';
  }
  return "pc_curve_p" + name + ".csv";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Strong connectivity of random digraphs and CNOT network dynamics", "randnet"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", config.threads, "OpenMP threads (0 keeps the runtime default)")->check(CLI::NonNegativeNumber);

  const auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", config.out, "output path instead of stdout");
    cmd->add_option("--format", config.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--precision", config.precision, "decimal places (table) or significant digits");
  };

  CLI::App* pc = app.add_subcommand("pc", "strong-connectivity probabilities");
  pc->require_subcommand(1);
  CLI::App* table = pc->add_subcommand("table", "P_C(n,p) for n = 2..nmax, rounded half away from zero");
  table->add_option("--nmax", config.n_max, "largest n (default 7)");
  table->add_option("--p", config.p, "edge probability, a/b for exact arithmetic (default 1/2)");
  table->add_option("--mode", config.mode, "auto, exact or float");
  add_output(table);

  CLI::App* curve = pc->add_subcommand("curve", "P_C(n,p) and the lower bound for several p");
  curve->add_option("--nmax", config.n_max, "largest n (default 30)");
  curve->add_option("--p", config.p, "single edge probability");
  curve->add_option("--p-list", config.p_list, std::string("comma-separated probabilities (default ") + kCurvePList + ")");
  curve->add_option("--mode", config.mode, "auto, exact or float");
  add_output(curve);
  curve->get_option("--out")->description("directory receiving one file per p");

  CLI::App* mc = pc->add_subcommand("mc", "Monte Carlo estimate of P_C(n,p)");
  mc->add_option("--n", config.n, "vertex count (default 7)");
  mc->add_option("--p", config.p, "edge probability (default 1/2)");
  mc->add_option("--samples", config.samples, "number of sampled graphs")->check(CLI::PositiveNumber);
  mc->add_option("--seed", config.seed, "random seed");
  add_output(mc);

  CLI::App* bound = pc->add_subcommand("bound", "lower bound 1 - (n-1)^2 (1-p^2)^(n-1)");
  bound->add_option("--n", config.n, "single n");
  bound->add_option("--nmax", config.n_max, "largest n (default 50)");
  bound->add_option("--p", config.p, "single edge probability");
  bound->add_option("--p-list", config.p_list, "comma-separated probabilities");
  add_output(bound);

  CLI::App* evolve = app.add_subcommand("evolve", "distance of iterated CNOT channels from the asymptotic map");
  evolve->require_subcommand(1);
  CLI::App* dynamic = evolve->add_subcommand("dynamic", "graph redrawn every step");
  CLI::App* stat = evolve->add_subcommand("static", "one unknown graph for all steps");
  for (CLI::App* cmd : {dynamic, stat}) {
    cmd->add_option("--n", config.n, "qubit count (default 4)");
    cmd->add_option("--p", config.p, "single edge probability");
    cmd->add_option("--p-list", config.p_list, std::string("comma-separated probabilities (default ") + kEvolvePList + ")");
    cmd->add_option("--rmax", config.r_max, "last iteration (default 100)");
    add_output(cmd);
  }
  stat->add_option("--mode", config.mode, "exhaustive or sampled");
  stat->add_option("--budget", config.budget, "graphs drawn in sampled mode")->check(CLI::PositiveNumber);
  stat->add_option("--seed", config.seed, "random seed for sampled mode");

  CLI::App* asymptote = app.add_subcommand("asymptote", "Pauli coefficients of the asymptotic state");
  asymptote->add_option("--n", config.n, "qubit count (default 4)");
  asymptote->add_option("--state", config.state, "zero, plus, mixed or a file of 4^n coefficients");
  add_output(asymptote);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // Restores the caller's thread count when run() returns.
  struct ThreadScope {
    int saved = omp_get_max_threads();
    explicit ThreadScope(int threads) {
      if (threads > 0) omp_set_num_threads(threads);
    }
    ~ThreadScope() { omp_set_num_threads(saved); }
  } thread_scope(config.threads);

  try {
    if (*table) return cmd_pc_table(config, out, err);
    if (*curve) return cmd_pc_curve(config, out, err);
    if (*mc) return cmd_pc_mc(config, out, err);
    if (*bound) return cmd_pc_bound(config, out, err);
    if (*dynamic) return cmd_evolve_dynamic(config, out, err);
    if (*stat) return cmd_evolve_static(config, out, err);
    if (*asymptote) return cmd_asymptote(config, out, err);
  } catch (const CostGuardError& e) {
    err << "refused: " << e.what() << '\n';
    return kExitCostGuard;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  err << "error: no command given\n";
  return kExitUsage;
}

}  // namespace randnet::cli
