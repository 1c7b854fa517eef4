#include "gcdlab/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gcdlab/bounds.hpp"
#include "gcdlab/canonical.hpp"
#include "gcdlab/dilated.hpp"
#include "gcdlab/gcdcore.hpp"
#include "gcdlab/io.hpp"
#include "gcdlab/multiindex.hpp"
#include "gcdlab/numeric.hpp"
#include "gcdlab/poisson.hpp"
#include "gcdlab/selftest.hpp"
#include "gcdlab/spectral.hpp"
#include "gcdlab/weights.hpp"

namespace gcdlab::cli {

namespace {

using io::Json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Options {
  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool timing = false;

  std::string seq, seq_file, index_set, index_file, weights, weights_file, coeffs, system_file;
  double alpha = kUnset;
  bool normalized = false;

  std::vector<std::uint64_t> numbers;

  std::string kind = "squarefree";
  unsigned r = 0;
  std::size_t n = 0;

  std::string method = "auto";
  std::string export_csv;
  double gamma = kUnset;

  std::string quadrature = "grid";
  std::size_t samples = 1000000;
  std::string sampling = "uniform";

  std::string alphas = "0.6,0.75,0.9";
  std::string Ns = "1e2,1e3,1e4,1e5,1e6";
  double c = 1.0;
  double C = 1.0;
  double xi = 2.0;
  double tau0 = 0.9;
  bool with_th4 = false;

  std::string vs, ws, Js = "0";
  double s = 1.0;

  std::size_t grid = 0;
  double grid_tol = 1e-4;
  std::size_t max_terms = 64;
  std::string prefixes;

  bool quick = false;
  std::string from_report;
};

struct Report {
  std::string command;
  Json config = Json::object();
  Json rows = Json::array();
  bool failed = false;
};

// Malformed input is a usage problem, not a computation failure.
template <class F>
auto load(F&& f) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

bool given(double x) { return !std::isnan(x); }

std::optional<IntegerSequence> maybe_sequence(const Options& o) {
  return load([&]() -> std::optional<IntegerSequence> {
    if (!o.seq.empty()) return IntegerSequence(io::parse_integers(o.seq));
    if (!o.seq_file.empty()) return io::load_sequence(o.seq_file);
    return std::nullopt;
  });
}

IntegerSequence require_sequence(const Options& o) {
  auto seq = maybe_sequence(o);
  if (!seq) throw UsageError("a sequence is required (--seq or --seq-file)");
  return *seq;
}

std::optional<WeightSequence> maybe_weights(const Options& o) {
  return load([&]() -> std::optional<WeightSequence> {
    if (!o.weights.empty()) return WeightSequence::explicit_list(io::parse_reals(o.weights));
    if (!o.weights_file.empty()) return io::load_weights(o.weights_file);
    if (given(o.alpha)) return power_law(o.alpha);
    return std::nullopt;
  });
}

WeightSequence require_weights(const Options& o) {
  auto t = maybe_weights(o);
  if (!t) throw UsageError("weights are required (--alpha, --weights or --weights-file)");
  return *t;
}

IndexSet require_index_set(const Options& o) {
  return load([&]() -> IndexSet {
    if (!o.index_set.empty()) return io::index_set_from_json(Json::parse(o.index_set));
    if (!o.index_file.empty()) {
      std::ifstream in(o.index_file);
      if (!in) throw std::invalid_argument("cannot open " + o.index_file);
      return io::index_set_from_json(Json::parse(in));
    }
    if (auto seq = maybe_sequence(o)) return factorize_all(*seq);
    throw UsageError("an index set is required (--index-set, --index-file, --seq or --seq-file)");
  });
}

DilatedSystem require_system(const Options& o) {
  return load([&]() -> DilatedSystem {
    if (!o.system_file.empty()) return io::load_system(o.system_file);
    auto seq = maybe_sequence(o);
    if (!seq) throw UsageError("a system is required (--system-file, or --seq with --coeffs)");
    std::vector<double> c = o.coeffs.empty() ? std::vector<double>(seq->size(), 1.0)
                                             : io::parse_reals(o.coeffs);
    return DilatedSystem(*seq, std::move(c));
  });
}

Json sequence_json(const IntegerSequence& seq) { return Json(seq.values()); }

void add_check(Json& row, const std::string& oracle, double tolerance, double discrepancy,
               Report& report) {
  const bool passed = discrepancy <= tolerance;
  row["oracle"] = oracle;
  row["tolerance"] = tolerance;
  row["discrepancy"] = discrepancy;
  row["passed"] = passed;
  if (!passed) report.failed = true;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// --- commands ------------------------------------------------------------

void cmd_factorize(const Options& o, Report& rep) {
  rep.config["numbers"] = o.numbers;
  for (std::uint64_t n : o.numbers) {
    const auto beta = factorize(n);
    Json row;
    row["n"] = n;
    row["multi_index"] = io::to_json(beta);
    row["text"] = beta.to_string();
    row["degree"] = beta.degree();
    add_check(row, "compose", 0.0, compose(beta) == n ? 0.0 : 1.0, rep);
    rep.rows.push_back(std::move(row));
  }
}

void cmd_gcdsum(const Options& o, Report& rep) {
  rep.config["normalized"] = o.normalized;
  Json row;
  if (!o.index_set.empty() || !o.index_file.empty()) {
    const auto B = require_index_set(o);
    const auto t = require_weights(o);
    rep.config["weights"] = t.describe();
    row["N"] = B.size();
    row["value"] = s_form(t, B, o.normalized);
    rep.rows.push_back(std::move(row));
    return;
  }
  const auto seq = require_sequence(o);
  if (!given(o.alpha)) throw UsageError("--alpha is required with a sequence");
  rep.config["alpha"] = o.alpha;
  rep.config["seq"] = sequence_json(seq);
  const double value = gcd_sum(seq, o.alpha, o.normalized);
  row["N"] = seq.size();
  row["alpha"] = o.alpha;
  row["value"] = value;
  if (o.alpha > 0.0 && o.alpha <= 1.0) {
    const double other = s_form(power_law(o.alpha), factorize_all(seq), o.normalized);
    row["s_form"] = other;
    add_check(row, "s_form", 1e-12, rel_diff(value, other), rep);
  }
  rep.rows.push_back(std::move(row));
}

void cmd_extremal(const Options& o, Report& rep) {
  const double alpha = given(o.alpha) ? o.alpha : 1.0;
  rep.config["kind"] = o.kind;
  rep.config["alpha"] = alpha;
  Json row;
  row["kind"] = o.kind;
  row["alpha"] = alpha;
  std::optional<IntegerSequence> seq;
  if (o.kind == "squarefree") {
    if (o.r == 0) throw UsageError("--r >= 1 is required for the square-free family");
    rep.config["r"] = o.r;
    seq = extremal_squarefree(o.r);
    row["r"] = o.r;
  } else if (o.kind == "primes" || o.kind == "first") {
    if (o.n == 0) throw UsageError("--n >= 1 is required for this family");
    rep.config["n"] = o.n;
    seq = o.kind == "primes" ? extremal_primes(o.n) : first_integers(o.n);
  } else {
    throw UsageError("unknown --kind " + o.kind);
  }
  const double brute = gcd_sum(*seq, alpha, false);
  row["N"] = seq->size();
  row["seq"] = sequence_json(*seq);
  row["brute"] = brute;
  row["normalized"] = brute / static_cast<double>(seq->size());
  if (o.kind == "squarefree") {
    const double closed = squarefree_closed_form(o.r, alpha);
    row["closed_form"] = closed;
    add_check(row, "closed_form", 1e-10, rel_diff(brute, closed), rep);
  }
  rep.rows.push_back(std::move(row));
}

void cmd_reduce(const Options& o, Report& rep) {
  const auto B = require_index_set(o);
  const auto t = require_weights(o);
  rep.config["weights"] = t.describe();
  rep.config["index_set"] = io::to_json(B);
  const auto red = canonical_reduce(B, t);
  const double before = s_form(t, B);
  const double after = s_form(red.weights, red.reduced);
  Json row;
  row["N"] = B.size();
  row["kappa"] = red.kappa;
  row["reduced"] = io::to_json(red.reduced);
  row["support_union_size"] = red.reduced.support_union().size();
  row["kappa_canonical"] = is_kappa_canonical(red.reduced, red.kappa);
  row["s_before"] = before;
  row["s_after"] = after;
  add_check(row, "s_form(t,B)", 1e-12, std::max(0.0, before - after), rep);
  if (!row["kappa_canonical"].get<bool>()) {
    row["passed"] = false;
    rep.failed = true;
  }
  rep.rows.push_back(std::move(row));
}

void cmd_spectral(const Options& o, Report& rep) {
  EigenOptions opts;
  if (o.method == "jacobi") {
    opts.method = EigenMethod::jacobi;
  } else if (o.method == "iterative") {
    opts.method = EigenMethod::iterative;
  } else if (o.method != "auto") {
    throw UsageError("unknown --method " + o.method);
  }
  rep.config["method"] = o.method;
  const bool by_index = !o.index_set.empty() || !o.index_file.empty();
  const auto t = require_weights(o);
  rep.config["weights"] = t.describe();
  std::optional<GcdMatrix> M;
  if (!by_index && given(o.alpha) && o.weights.empty() && o.weights_file.empty()) {
    const auto seq = require_sequence(o);
    rep.config["seq"] = sequence_json(seq);
    M = build_matrix(seq, o.alpha);
  } else {
    const auto B = require_index_set(o);
    rep.config["index_set"] = io::to_json(B);
    M = build_matrix(B, t);
  }
  if (!o.export_csv.empty()) {
    std::ofstream csv(o.export_csv);
    if (!csv) throw std::runtime_error("cannot write " + o.export_csv);
    M->write_csv(csv);
  }
  const auto eig = eig_extremes(*M, opts);
  const auto [lo, hi] = sandwich_bounds(t, M->order());
  Json row;
  row["N"] = M->order();
  row["lambda_min"] = eig.lambda_min;
  row["lambda_max"] = eig.lambda_max;
  row["method"] = eig.method == EigenMethod::jacobi ? "jacobi" : "iterative";
  row["iterations"] = eig.iterations;
  row["residual"] = eig.residual;
  row["rayleigh_all_ones"] = rayleigh_all_ones(*M);
  row["sandwich_lower"] = lo;
  row["sandwich_upper"] = hi;
  if (given(o.gamma)) row["spectral_ceiling"] = theorem41_rhs(M->order(), o.gamma);
  const double violation =
      std::max({0.0, lo - eig.lambda_min, eig.lambda_max - hi, eig.lambda_min > 0.0 ? 0.0 : INFINITY});
  add_check(row, "sandwich bounds", 1e-8, violation, rep);
  rep.rows.push_back(std::move(row));
}

void cmd_verify_poisson(const Options& o, Report& rep) {
  const auto B = require_index_set(o);
  const auto t = require_weights(o);
  const std::vector<double> c = o.coeffs.empty()
                                    ? std::vector<double>(B.size(), 1.0)
                                    : load([&] { return io::parse_reals(o.coeffs); });
  if (c.size() != B.size()) throw UsageError("--coeffs must have one entry per index set member");
  rep.config["index_set"] = io::to_json(B);
  rep.config["weights"] = t.describe();
  rep.config["coeffs"] = c;
  rep.config["quadrature"] = o.quadrature;
  IdentityMethod method;
  if (o.quadrature == "grid") {
    method = GridQuadrature{};
  } else if (o.quadrature == "mc") {
    MonteCarlo mc;
    mc.samples = o.samples;
    mc.seed = o.seed;
    if (o.sampling == "kernel") {
      mc.sampling = McSampling::kernel;
    } else if (o.sampling != "uniform") {
      throw UsageError("unknown --sampling " + o.sampling);
    }
    rep.config["samples"] = o.samples;
    rep.config["sampling"] = o.sampling;
    method = mc;
  } else {
    throw UsageError("unknown --quadrature " + o.quadrature);
  }
  const auto r = verify_identity(B, c, t, method);
  Json row;
  row["dimension"] = r.dimension;
  row["points"] = r.points;
  row["exact_form"] = r.exact_form;
  row["estimate"] = r.estimate;
  row["error_bound"] = r.error_bound;
  row["converged"] = r.converged;
  if (o.quadrature == "grid") {
    add_check(row, "quadratic_form (relative)", 1e-8, rel_diff(r.estimate, r.exact_form), rep);
  } else {
    add_check(row, "quadratic_form (4 standard errors)", 4.0 * r.error_bound,
              std::abs(r.estimate - r.exact_form), rep);
  }
  rep.rows.push_back(std::move(row));
}

void cmd_bounds(const Options& o, Report& rep) {
  const auto alphas = load([&] { return io::parse_reals(o.alphas); });
  const auto Ns = load([&] { return io::parse_reals(o.Ns); });
  rep.config["alpha"] = alphas;
  rep.config["N"] = Ns;
  rep.config["c"] = o.c;
  rep.config["C"] = o.C;
  if (o.with_th4) {
    rep.config["xi"] = o.xi;
    rep.config["tau0"] = o.tau0;
  }
  // The weighted-product bound runs over j < N, so power-law weights need N primes.
  std::optional<PrimeTable> th4_primes;
  if (o.with_th4) {
    double largest = 1.0;
    for (double N : Ns) largest = std::max(largest, N);
    if (largest > 5e7) throw UsageError("--with-th4 supports N up to 5e7");
    th4_primes.emplace(std::max(PrimeTable::kDefaultCount, static_cast<std::size_t>(std::ceil(largest))));
  }
  for (double alpha : alphas) {
    for (double N : Ns) {
      Json row;
      const double g = g_bound(alpha, N);
      const auto r = static_cast<unsigned>(std::floor(std::log2(N)));
      row["alpha"] = alpha;
      row["N"] = N;
      row["g"] = g;
      row["exp_g"] = std::exp(g);
      row["gal"] = gal_bound(N, o.c);
      row["dh"] = dyer_harman_bound(N, o.C, o.c);
      row["harman_floor"] = harman_floor(N);
      row["extremal_value"] = squarefree_closed_form(r, alpha) / std::exp2(r);
      if (o.with_th4) {
        BoundParams p;
        p.alpha = alpha;
        p.N = N;
        p.xi = o.xi;
        p.C = o.C;
        p.c = o.c;
        p.tau0 = o.tau0;
        const auto t = WeightSequence::power_law(alpha, *th4_primes);
        const auto sel = default_v(alpha, N, t, p);
        const auto th4 = th4_rhs(t, sel.v, o.xi, o.C, N);
        row["r_N"] = th4.r_N;
        row["v_fallback"] = sel.fallback;
        row["th4"] = th4.value;
      }
      rep.rows.push_back(std::move(row));
    }
  }
}

void cmd_resonance(const Options& o, Report& rep) {
  const auto vs = load([&] { return io::parse_integers(o.vs); });
  const auto ws = load([&] { return io::parse_integers(o.ws); });
  const auto Js = load([&] { return io::parse_integers(o.Js); });
  if (vs.empty() || ws.empty() || Js.empty()) throw UsageError("--v, --w and --J need values");
  rep.config["v"] = vs;
  rep.config["w"] = ws;
  rep.config["J"] = Js;
  rep.config["s"] = o.s;
  for (auto v : vs) {
    for (auto w : ws) {
      if (v > w) continue;
      for (auto J : Js) {
        const auto r = resonance_sum(v, w, J, o.s);
        Json row;
        row["v"] = v;
        row["w"] = w;
        row["J"] = J;
        row["s"] = o.s;
        row["value"] = r.value;
        row["tail_bound"] = r.tail_bound;
        row["j_star"] = r.j_star;
        rep.rows.push_back(std::move(row));
      }
    }
  }
}

void cmd_maximal(const Options& o, Report& rep) {
  const auto sys = require_system(o);
  rep.config["seq"] = sequence_json(sys.sequence());
  rep.config["coeffs"] = std::vector<double>(sys.coeffs().begin(), sys.coeffs().end());
  MaximalOptions mo;
  mo.max_terms = o.max_terms;
  const auto m = maximal_l2_sq(sys, mo);
  Json row;
  row["N"] = sys.size();
  row["coeff_energy"] = sys.coeff_energy();
  row["sawtooth_l2_sq"] = sawtooth_l2_sq(sys);
  row["maximal_l2_sq"] = m.value;
  row["cells"] = m.cells;
  if (o.grid > 0) {
    rep.config["grid"] = o.grid;
    const double g = maximal_l2_grid(sys, o.grid);
    row["grid_l2_sq"] = g;
    add_check(row, "midpoint grid", o.grid_tol, std::abs(g - m.value), rep);
  }
  rep.rows.push_back(std::move(row));
}

void cmd_ch_ratio(const Options& o, Report& rep) {
  const auto sys = require_system(o);
  rep.config["seq"] = sequence_json(sys.sequence());
  rep.config["coeffs"] = std::vector<double>(sys.coeffs().begin(), sys.coeffs().end());
  std::vector<std::uint64_t> prefixes;
  if (!o.prefixes.empty()) {
    prefixes = load([&] { return io::parse_integers(o.prefixes); });
  } else {
    for (std::size_t M = 3; M <= sys.size(); ++M) prefixes.push_back(M);
  }
  rep.config["prefixes"] = prefixes;
  MaximalOptions mo;
  mo.max_terms = o.max_terms;
  for (auto M : prefixes) {
    if (M < 3 || M > sys.size()) throw UsageError("prefix lengths must lie in [3, N]");
    const auto r = ch_ratio(sys.prefix(M), mo);
    Json row;
    row["N"] = r.N;
    row["maximal_l2_sq"] = r.maximal_l2_sq;
    row["coeff_energy"] = r.coeff_energy;
    row["ratio_to_loglog4"] = r.ratio_to_loglog4;
    row["lower_witness"] = r.lower_witness;
    rep.rows.push_back(std::move(row));
  }
}

int run_impl(std::span<const std::string> args, std::ostream& out, std::ostream& err, bool nested);

void cmd_selftest(const Options& o, Report& rep, std::ostream& err) {
  if (o.from_report.empty()) {
    rep.config["quick"] = o.quick;
    for (const auto& c : run_selftest(o.seed, o.quick)) {
      Json row;
      row["check"] = c.name;
      row["cases"] = c.cases;
      row["worst"] = c.worst;
      row["oracle"] = c.oracle;
      row["tolerance"] = c.tolerance;
      row["passed"] = c.passed;
      if (!c.detail.empty()) row["detail"] = c.detail;
      if (!c.passed) rep.failed = true;
      rep.rows.push_back(std::move(row));
    }
    return;
  }
  rep.config["from_report"] = o.from_report;
  const Json original = load([&] {
    std::ifstream in(o.from_report);
    if (!in) throw std::invalid_argument("cannot open " + o.from_report);
    return Json::parse(in);
  });
  if (!original.is_object() || original.value("schema_version", 0) != kSchemaVersion ||
      !original.contains("config") || !original["config"].contains("argv") ||
      !original.contains("rows")) {
    throw UsageError(o.from_report + " is not a report of schema version " +
                     std::to_string(kSchemaVersion));
  }
  std::vector<std::string> argv;
  for (const auto& a : original["config"]["argv"]) argv.push_back(a.get<std::string>());
  if (std::find(argv.begin(), argv.end(), "--from-report") != argv.end()) {
    throw UsageError("cannot replay a replay report");
  }
  argv.insert(argv.end(), {"--format", "json"});
  std::ostringstream replay_out;
  const int code = run_impl(argv, replay_out, err, true);
  Json row;
  row["report_command"] = original.value("command", "");
  row["replay_exit_code"] = code;
  bool matched = false;
  if (code != kUsageError && !replay_out.str().empty()) {
    const Json replay = Json::parse(replay_out.str());
    matched = replay["command"] == original["command"] && replay["rows"] == original["rows"];
  }
  bool checks_passed = true;
  for (const auto& r : original["rows"]) {
    if (r.is_object() && r.contains("passed") && r["passed"] != true) checks_passed = false;
  }
  row["rows"] = original["rows"].size();
  row["rows_matched"] = matched;
  row["checks_passed"] = checks_passed;
  row["oracle"] = "re-run of echoed argv";
  row["passed"] = matched && checks_passed;
  if (!(matched && checks_passed)) rep.failed = true;
  rep.rows.push_back(std::move(row));
}

// --- output --------------------------------------------------------------

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void write_csv(const Report& rep, std::ostream& out) {
  out << "# gcdlab " << rep.command << " seed=" << rep.config["seed"].get<std::uint64_t>() << '\n';
  std::vector<std::string> columns;
  for (const auto& row : rep.rows) {
    for (const auto& [key, _] : row.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rep.rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "");
      if (row.contains(columns[i])) out << csv_cell(row[columns[i]]);
    }
    out << '\n';
  }
}

void write_human(const Report& rep, std::ostream& out) {
  out << rep.command << " (seed " << rep.config["seed"].get<std::uint64_t>() << ")\n";
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    out << "[" << i << "]\n";
    for (const auto& [key, value] : rep.rows[i].items()) {
      out << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  }
}

void write_report(const Report& rep, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    write_csv(rep, out);
  } else if (format == "human") {
    write_human(rep, out);
  } else {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = rep.command;
    doc["config"] = rep.config;
    doc["rows"] = rep.rows;
    out << doc.dump(2) << '\n';
  }
}

// Restores the process-wide worker count when a run ends.
class ParallelismScope {
 public:
  explicit ParallelismScope(unsigned workers)
      : active_(workers > 0), previous_(active_ ? set_parallelism(workers) : 0) {}
  ~ParallelismScope() {
    if (active_) set_parallelism(previous_);
  }
  ParallelismScope(const ParallelismScope&) = delete;
  ParallelismScope& operator=(const ParallelismScope&) = delete;

 private:
  bool active_;
  unsigned previous_;
};

int run_impl(std::span<const std::string> args, std::ostream& out, std::ostream& err, bool nested) {
  Options o;
  CLI::App app{"gcdlab: GCD sums, GCD matrices and dilated systems.\n"
               "Logarithms are natural; [x] denotes the floor of x."};
  app.name("gcdlab");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "human"}))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--seed", o.seed, "Seed for every random stream");
  app.add_option("--threads", o.threads, "Worker threads (default: GCDLAB_THREADS or hardware)");
  app.add_flag("--timing", o.timing, "Print elapsed time to stderr");

  auto add_seq = [&](CLI::App* sc) {
    auto* a = sc->add_option("--seq", o.seq, "Comma-separated increasing integers");
    auto* b = sc->add_option("--seq-file", o.seq_file, "File with one integer per line");
    a->excludes(b);
  };
  auto add_weights = [&](CLI::App* sc) {
    sc->add_option("--alpha", o.alpha, "Power-law exponent: t_j = p_j^-alpha");
    auto* a = sc->add_option("--weights", o.weights, "Comma-separated decreasing weights in (0,1)");
    auto* b = sc->add_option("--weights-file", o.weights_file, "File with one weight per line");
    a->excludes(b);
  };
  auto add_index = [&](CLI::App* sc) {
    auto* a = sc->add_option("--index-set", o.index_set, R"(JSON array such as [{"1":2},{"2":1}])");
    auto* b = sc->add_option("--index-file", o.index_file, "File holding an index set as JSON");
    a->excludes(b);
  };
  auto add_system = [&](CLI::App* sc) {
    add_seq(sc);
    sc->add_option("--coeffs", o.coeffs, "Comma-separated coefficients (default all ones)");
    sc->add_option("--system-file", o.system_file, "File with columns n_k c_k");
    sc->add_option("--max-terms", o.max_terms, "Largest accepted system size");
  };

  auto* factorize_cmd = app.add_subcommand("factorize", "Multi-index of positive integers");
  factorize_cmd->add_option("n", o.numbers, "Integers to factorize")->required();

  auto* gcdsum_cmd = app.add_subcommand("gcdsum", "GCD sum of a sequence, or S(t,B) of an index set");
  add_seq(gcdsum_cmd);
  add_weights(gcdsum_cmd);
  add_index(gcdsum_cmd);
  gcdsum_cmd->add_flag("--normalized", o.normalized, "Divide by N");

  auto* extremal_cmd = app.add_subcommand("extremal", "GCD sums of extremal families");
  extremal_cmd->add_option("--kind", o.kind, "squarefree | primes | first")
      ->check(CLI::IsMember({"squarefree", "primes", "first"}));
  extremal_cmd->add_option("--r", o.r, "Number of primes in the square-free family");
  extremal_cmd->add_option("--n", o.n, "Length of the primes / first-integers family");
  extremal_cmd->add_option("--alpha", o.alpha, "Exponent (default 1)");

  auto* reduce_cmd = app.add_subcommand("reduce", "Canonical reduction of an index set");
  add_seq(reduce_cmd);
  add_weights(reduce_cmd);
  add_index(reduce_cmd);

  auto* spectral_cmd = app.add_subcommand("spectral", "Extreme eigenvalues of a GCD matrix");
  add_seq(spectral_cmd);
  add_weights(spectral_cmd);
  add_index(spectral_cmd);
  spectral_cmd->add_option("--method", o.method, "auto | jacobi | iterative");
  spectral_cmd->add_option("--export-csv", o.export_csv, "Write the matrix as CSV");
  spectral_cmd->add_option("--gamma", o.gamma, "Supremum of S up to N, for the spectral ceiling");

  auto* poisson_cmd = app.add_subcommand("verify-poisson", "Check the Poisson integral identity");
  add_seq(poisson_cmd);
  add_weights(poisson_cmd);
  add_index(poisson_cmd);
  poisson_cmd->add_option("--coeffs", o.coeffs, "Comma-separated coefficients (default all ones)");
  poisson_cmd->add_option("--quadrature", o.quadrature, "grid | mc");
  poisson_cmd->add_option("--samples", o.samples, "Monte Carlo samples");
  poisson_cmd->add_option("--sampling", o.sampling, "uniform | kernel");

  auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate upper and lower bound shapes");
  bounds_cmd->add_option("--alpha", o.alphas, "Comma-separated exponents in (0,1)");
  bounds_cmd->add_option("--N", o.Ns, "Comma-separated sizes");
  bounds_cmd->add_option("--c", o.c, "Constant c in the comparison bounds");
  bounds_cmd->add_option("--C", o.C, "Constant C in the comparison bounds");
  bounds_cmd->add_flag("--with-th4", o.with_th4, "Add the weighted-product bound with the default v");
  bounds_cmd->add_option("--xi", o.xi, "xi for the weighted-product bound");
  bounds_cmd->add_option("--tau0", o.tau0, "Fallback weight for the v selector");

  auto* resonance_cmd = app.add_subcommand("resonance", "Resonance sums over j > J");
  resonance_cmd->add_option("--v", o.vs, "Comma-separated v values")->required();
  resonance_cmd->add_option("--w", o.ws, "Comma-separated w values")->required();
  resonance_cmd->add_option("--J", o.Js, "Comma-separated cutoffs");
  resonance_cmd->add_option("--s", o.s, "Exponent s > 1/2");

  auto* maximal_cmd = app.add_subcommand("maximal", "Exact L2 norm of the maximal partial sum");
  add_system(maximal_cmd);
  maximal_cmd->add_option("--grid", o.grid, "Also evaluate on a midpoint grid of this size");
  maximal_cmd->add_option("--grid-tol", o.grid_tol, "Tolerance for the grid comparison");

  auto* ch_cmd = app.add_subcommand("ch-ratio", "Maximal norm over energy times (log log N)^4");
  add_system(ch_cmd);
  ch_cmd->add_option("--prefixes", o.prefixes, "Comma-separated prefix lengths (default 3..N)");

  auto* selftest_cmd = app.add_subcommand("selftest", "Invariant suite, or replay of a report");
  selftest_cmd->add_flag("--quick", o.quick, "Smaller instance counts");
  selftest_cmd->add_option("--from-report", o.from_report, "JSON report to re-run and compare");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  CLI::App* active = app.get_subcommands().front();
  Report rep;
  rep.command = active->get_name();
  rep.config["argv"] = std::vector<std::string>(args.begin(), args.end());
  rep.config["seed"] = o.seed;
  rep.config["threads"] = o.threads;

  const auto start = std::chrono::steady_clock::now();
  try {
    ParallelismScope scope(o.threads);
    if (active == factorize_cmd) cmd_factorize(o, rep);
    else if (active == gcdsum_cmd) cmd_gcdsum(o, rep);
    else if (active == extremal_cmd) cmd_extremal(o, rep);
    else if (active == reduce_cmd) cmd_reduce(o, rep);
    else if (active == spectral_cmd) cmd_spectral(o, rep);
    else if (active == poisson_cmd) cmd_verify_poisson(o, rep);
    else if (active == bounds_cmd) cmd_bounds(o, rep);
    else if (active == resonance_cmd) cmd_resonance(o, rep);
    else if (active == maximal_cmd) cmd_maximal(o, rep);
    else if (active == ch_cmd) cmd_ch_ratio(o, rep);
    else if (active == selftest_cmd) cmd_selftest(o, rep, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << active->help();
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << rep.command << ": " << e.what() << '\n';
    return kComputationError;
  }
  write_report(rep, o.format, out);
  if (o.timing && !nested) {
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ms.count());
    err << "elapsed_ms: " << buf << '\n';
  }
  return rep.failed ? kComputationError : kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  return run_impl(args, out, err, false);
}

}  // namespace gcdlab::cli
