#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <cmath>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "volsamp/errors.hpp"
#include "volsamp/io.hpp"
#include "volsamp/regression.hpp"
#include "volsamp/sampler.hpp"
#include "volsamp/suites.hpp"

namespace volsamp::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json matrix_json(const Matrix& m) {
  if (m.cols() == 1) {
    json out = json::array();
    for (Index r = 0; r < m.rows(); ++r) out.push_back(m(r, 0));
    return out;
  }
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json report_json(const VerificationReport& r) {
  json out = {
      {"quantity", r.quantity},
      {"method", r.method},
      {"predicted", matrix_json(r.predicted)},
      {"estimated", matrix_json(r.estimated)},
      {"max_abs_deviation", r.max_abs_deviation},
      {"largest_deviation", r.largest_deviation},
      {"ci_halfwidth", r.ci_halfwidth},
      {"tolerance", r.tolerance},
      {"passed", r.passed},
  };
  if (r.method == "monte-carlo") {
    out["replicates"] = r.replicates;
    out["seed"] = r.seed.value;
  }
  if (!r.note.empty()) out["note"] = r.note;
  if (!r.subchecks.empty()) {
    json subs = json::array();
    for (const auto& s : r.subchecks) subs.push_back(report_json(s));
    out["subchecks"] = std::move(subs);
  }
  return out;
}

json subset_json(const IndexSubset& s) { return json(s.one_based()); }

struct Run {
  std::string command;
  std::vector<std::string> argv;
  json inputs = json::object();
  std::optional<std::uint64_t> seed;
  json timings = json::object();
  json results = json::object();

  json document() const {
    json out = {{"command", command}, {"argv", argv}, {"inputs", inputs}};
    if (seed) out["seed"] = *seed;
    out["timings"] = timings;
    out["results"] = results;
    out["results_sha256"] = sha256_hex(results.dump());
    return out;
  }
};

std::string load(Run& run, const std::string& key, const std::string& path) {
  std::string text = read_file(path);
  run.inputs[key] = {{"path", path}, {"sha256", sha256_hex(text)}};
  return text;
}

ProblemMatrix load_matrix(Run& run, const std::string& path) {
  return ProblemMatrix(parse_matrix(load(run, "input", path)));
}

Vector load_labels(Run& run, const std::string& path) {
  return parse_labels(load(run, "labels", path));
}

struct Options {
  std::string input;
  std::string labels;
  Index size = 0;
  std::uint64_t seed = 0;
  Index count = 1;
  Index repeats = 1;
  std::size_t replicates = 10000;
  std::string suite = "exact";
  double cap = kDefaultSubsetCap;
  double tuple_cap = 1e5;
  double safety_factor = kDefaultSafetyFactor;
  double confidence = 0.99;
  unsigned threads = 1;
  std::vector<std::string> dims;
  Index trials = 5;
};

Index resolve_size(const Options& o, const ProblemMatrix& x) {
  const Index s = o.size == 0 ? x.d() : o.size;
  check_sample_size(x, s);
  return s;
}

int cmd_sample(const Options& o, Run& run) {
  const ProblemMatrix x = load_matrix(run, o.input);
  if (o.size == 0) throw Error(ErrorCode::RangeError, "--size is required");
  check_sample_size(x, o.size);
  if (o.count < 1) throw Error(ErrorCode::RangeError, "--count must be positive");
  run.seed = o.seed;
  json samples = json::array();
  json per_sample = json::array();
  const auto start = Clock::now();
  for (Index j = 0; j < o.count; ++j) {
    const auto t0 = Clock::now();
    const auto s = reverse_iterative_sample(x, o.size, derive_seed(RngSeed{o.seed},
                                                                   static_cast<std::uint64_t>(j)));
    per_sample.push_back(elapsed_ms(t0));
    samples.push_back(subset_json(s));
  }
  run.timings = {{"total_ms", elapsed_ms(start)}, {"per_sample_ms", per_sample}};
  run.results = {{"d", x.d()}, {"n", x.n()}, {"size", o.size}, {"samples", samples}};
  return kSuccess;
}

int cmd_regress(const Options& o, Run& run) {
  const ProblemMatrix x = load_matrix(run, o.input);
  const RegressionProblem p(x, load_labels(run, o.labels));
  const Index s = resolve_size(o, x);
  if (o.repeats < 1) throw Error(ErrorCode::RangeError, "--repeats must be positive");
  run.seed = o.seed;

  const auto start = Clock::now();
  std::vector<IndexSubset> samples;
  json per_sample = json::array();
  for (Index j = 0; j < o.repeats; ++j) {
    samples.push_back(reverse_iterative_sample(
        x, s, derive_seed(RngSeed{o.seed}, static_cast<std::uint64_t>(j))));
    const Solution sol = solve_subset(p, samples.back());
    per_sample.push_back({{"subset", subset_json(samples.back())},
                          {"w", matrix_json(sol.w)},
                          {"loss", sol.loss}});
  }
  const Solution avg = averaged_solution(p, samples);
  const Solution best = solve_full(p);
  const double label_scale = std::max(1.0, p.labels().squaredNorm());
  const bool realizable = best.loss <= 1e-18 * label_scale;
  const double ratio = realizable ? 1.0 : avg.loss / best.loss;

  run.timings = {{"total_ms", elapsed_ms(start)}};
  run.results = {{"d", x.d()},
                 {"n", x.n()},
                 {"size", s},
                 {"samples", per_sample},
                 {"averaged_w", matrix_json(avg.w)},
                 {"averaged_loss", avg.loss},
                 {"optimal_w", matrix_json(best.w)},
                 {"optimal_loss", best.loss},
                 {"loss_ratio", ratio},
                 {"realizable", realizable}};
  return kSuccess;
}

int cmd_verify(const Options& o, Run& run) {
  const ProblemMatrix x = load_matrix(run, o.input);
  std::optional<Vector> labels;
  if (!o.labels.empty()) {
    labels = load_labels(run, o.labels);
    if (labels->size() != x.n()) {
      throw Error(ErrorCode::DimensionMismatch, "labels do not match the column count");
    }
  }
  const Index s = resolve_size(o, x);
  const auto start = Clock::now();
  std::vector<VerificationReport> reports;
  if (o.suite == "exact") {
    OracleOptions opts;
    opts.cap = o.cap;
    opts.tuple_cap = o.tuple_cap;
    opts.threads = o.threads;
    reports = run_exact_suite(x, labels, s, opts);
  } else {
    McConfig cfg;
    cfg.replicates = o.replicates;
    cfg.seed = RngSeed{o.seed};
    cfg.threads = o.threads;
    cfg.safety_factor = o.safety_factor;
    cfg.confidence = o.confidence;
    run.seed = o.seed;
    reports = run_mc_suite(x, labels, s, std::max<Index>(o.repeats, 1), cfg);
  }
  json list = json::array();
  bool all = true;
  for (const auto& r : reports) {
    list.push_back(report_json(r));
    all = all && r.all_passed();
  }
  run.timings = {{"total_ms", elapsed_ms(start)}};
  run.results = {{"suite", o.suite}, {"size", s}, {"all_passed", all}, {"reports", list}};
  return all ? kSuccess : kVerificationFailed;
}

struct BenchConfig {
  Index d, n, s;
};

BenchConfig parse_dims(const std::string& text) {
  BenchConfig c{};
  char sep1 = 0, sep2 = 0;
  std::istringstream in(text);
  if (!(in >> c.d >> sep1 >> c.n >> sep2 >> c.s) || sep1 != ',' || sep2 != ',' ||
      !(in >> std::ws).eof()) {
    throw Error(ErrorCode::ParseError, "--dims expects d,n,s but got '" + text + "'");
  }
  if (c.d < 1 || c.n < c.d || c.s < c.d || c.s > c.n) {
    throw Error(ErrorCode::RangeError, "invalid configuration " + text);
  }
  return c;
}

/// Least-squares slope of log(time) against log(n).
std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (auto [n, t] : points) {
    mx += std::log(n);
    my += std::log(t);
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());
  double sxy = 0, sxx = 0;
  for (auto [n, t] : points) {
    sxy += (std::log(n) - mx) * (std::log(t) - my);
    sxx += (std::log(n) - mx) * (std::log(n) - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

int cmd_bench(const Options& o, Run& run) {
  if (o.dims.empty()) throw Error(ErrorCode::RangeError, "at least one --dims is required");
  if (o.trials < 1) throw Error(ErrorCode::RangeError, "--trials must be positive");
  run.seed = o.seed;
  std::vector<BenchConfig> configs;
  for (const auto& text : o.dims) configs.push_back(parse_dims(text));

  json rows = json::array();
  json timing_rows = json::array();
  std::map<Index, std::vector<std::pair<double, double>>> by_d;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const auto [d, n, s] = configs[c];
    const RngSeed config_seed = derive_seed(RngSeed{o.seed}, c);
    std::mt19937_64 gen(config_seed.value);
    std::normal_distribution<double> gauss;
    Matrix m(d, n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < d; ++i) m(i, j) = gauss(gen);
    }
    const ProblemMatrix x(std::move(m));
    std::vector<double> times;
    std::string digest_input;
    for (Index t = 0; t < o.trials; ++t) {
      const auto t0 = Clock::now();
      const auto sample =
          reverse_iterative_sample(x, s, derive_seed(config_seed, static_cast<std::uint64_t>(t)));
      times.push_back(elapsed_ms(t0));
      for (Index i : sample) digest_input += std::to_string(i) + ",";
      digest_input += ";";
    }
    std::sort(times.begin(), times.end());
    const double median = times.size() % 2 ? times[times.size() / 2]
                                           : 0.5 * (times[times.size() / 2 - 1] +
                                                    times[times.size() / 2]);
    rows.push_back({{"d", d}, {"n", n}, {"s", s}, {"trials", o.trials},
                    {"samples_sha256", sha256_hex(digest_input)}});
    timing_rows.push_back({{"d", d}, {"n", n}, {"s", s}, {"median_ms", median}});
    if (s == d) by_d[d].emplace_back(static_cast<double>(n), std::max(median, 1e-6));
  }
  json slopes = json::array();
  for (const auto& [d, points] : by_d) {
    if (auto slope = loglog_slope(points)) {
      slopes.push_back({{"d", d}, {"fitted_exponent", *slope}});
    }
  }
  run.timings = {{"configurations", timing_rows}, {"scaling", slopes}};
  run.results = {{"configurations", rows}};
  return kSuccess;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix:
    case ErrorCode::NumericBreakdown:
    case ErrorCode::DenominatorVanishes:
      return kNumericBreakdown;
    default:
      return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact volume sampling, unbiased least-squares estimators and their checks", "volsamp"};
  app.require_subcommand(1);
  Options o;

  auto* sample = app.add_subcommand("sample", "Draw volume samples of columns");
  sample->add_option("--input", o.input, "Matrix file, one row per line")->required();
  sample->add_option("--size", o.size, "Subset size s, d <= s <= n")->required();
  sample->add_option("--seed", o.seed, "Master seed");
  sample->add_option("--count", o.count, "Number of samples");

  auto* regress = app.add_subcommand("regress", "Subsampled least squares");
  regress->add_option("--input", o.input)->required();
  regress->add_option("--labels", o.labels)->required();
  regress->add_option("--size", o.size, "Subset size (default d)");
  regress->add_option("--repeats", o.repeats, "Independent samples to average");
  regress->add_option("--seed", o.seed);

  auto* verify = app.add_subcommand("verify", "Check the expectation formulas");
  verify->add_option("--input", o.input)->required();
  verify->add_option("--labels", o.labels);
  verify->add_option("--suite", o.suite)->check(CLI::IsMember({"exact", "mc"}));
  verify->add_option("--size", o.size, "Subset size (default d)");
  verify->add_option("--seed", o.seed);
  verify->add_option("--replicates", o.replicates);
  verify->add_option("--repeats", o.repeats, "k for the averaged-predictor check (mc)");
  verify->add_option("--cap", o.cap, "Enumeration cap on C(n, s)");
  verify->add_option("--tuple-cap", o.tuple_cap, "Cap on C(n, d)^k");
  verify->add_option("--safety-factor", o.safety_factor);
  verify->add_option("--confidence", o.confidence);
  verify->add_option("--threads", o.threads, "0 = auto");

  auto* bench = app.add_subcommand("bench", "Time the sampler");
  bench->add_option("--dims", o.dims, "d,n,s (repeatable)")->required();
  bench->add_option("--seed", o.seed);
  bench->add_option("--trials", o.trials);
  bench->add_option("--threads", o.threads, "accepted for symmetry; timing is serial");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink;
    const int code = app.exit(e, sink, err);
    out << sink.str();
    return code == 0 ? kSuccess : kInputError;
  }

  Run run;
  run.argv = args;
  int status = kSuccess;
  try {
    if (*sample) {
      run.command = "sample";
      status = cmd_sample(o, run);
    } else if (*regress) {
      run.command = "regress";
      status = cmd_regress(o, run);
    } else if (*verify) {
      run.command = "verify";
      if (o.suite == "mc" && o.replicates < kMinReplicates) {
        throw Error(ErrorCode::RangeError, "--replicates must be at least 100");
      }
      status = cmd_verify(o, run);
    } else {
      run.command = "bench";
      status = cmd_bench(o, run);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    json doc = {{"command", run.command},
                {"argv", args},
                {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
    out << doc.dump(2) << "\n";
    return exit_code_for(e.code());
  }
  out << run.document().dump(2) << "\n";
  return status;
}

}  // namespace volsamp::cli
