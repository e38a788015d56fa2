#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bcsvm/analysis.hpp"
#include "bcsvm/cascade.hpp"
#include "bcsvm/error.hpp"
#include "bcsvm/model_io.hpp"
#include "bcsvm/synthetic.hpp"
#include "report.hpp"

namespace bcsvm::cli {
namespace {

constexpr const char* kCacheEnv = "BCSVM_CACHE_MB";

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Flags shared by every command that trains.
struct SolverFlags {
  std::string kernel = "rbf";
  std::optional<double> gamma;
  int degree = 3;
  double coef0 = 0.0;
  double cost = 1.0;
  double tol = 1e-3;
  std::size_t max_iter = SolverConfig{}.max_iter;
  std::optional<std::size_t> cache_mb;
  bool remap_labels = false;

  void attach(CLI::App& app) {
    app.add_option("--kernel", kernel, "rbf (gaussian), linear or poly")->capture_default_str();
    app.add_option("--gamma", gamma, "kernel width; defaults to 1/dim");
    app.add_option("--degree", degree, "polynomial degree")->capture_default_str();
    app.add_option("--coef0", coef0, "polynomial offset")->capture_default_str();
    app.add_option("--cost", cost, "box constraint C")->capture_default_str();
    app.add_option("--tol", tol, "stopping gap")->capture_default_str();
    app.add_option("--max-iter", max_iter, "SMO iteration cap")->capture_default_str();
    app.add_option("--cache-mb", cache_mb, std::string("kernel cache per trainer; default from ") + kCacheEnv + " or 100");
    app.add_flag("--remap-labels", remap_labels, "accept {0,1} labels as {-1,+1}");
  }

  [[nodiscard]] SolverConfig resolve(std::size_t dim) const {
    SolverConfig cfg;
    cfg.C = cost;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    if (cache_mb) {
      cfg.cache_mb = *cache_mb;
    } else if (const char* env = std::getenv(kCacheEnv); env != nullptr && *env != '\0') {
      std::size_t value = 0;
      const std::string text(env);
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(std::string(kCacheEnv) + " must be a non-negative integer, got '" + text + "'");
      }
      cfg.cache_mb = value;
    }
    const double g = gamma.value_or(dim == 0 ? 1.0 : 1.0 / static_cast<double>(dim));
    switch (kernel_kind_from_string(kernel)) {
      case KernelKind::linear:
        cfg.kernel = KernelSpec::linear();
        break;
      case KernelKind::rbf:
        cfg.kernel = KernelSpec::rbf(g);
        break;
      case KernelKind::polynomial:
        cfg.kernel = KernelSpec::polynomial(g, degree, coef0);
        break;
    }
    cfg.validate();
    return cfg;
  }

  [[nodiscard]] ParseOptions parse_options() const {
    ParseOptions o;
    o.remap_zero_label = remap_labels;
    return o;
  }
};

struct PlanFlags {
  std::vector<std::size_t> layers;
  std::string partition = "balanced";
  std::string merge = "pooled";

  void attach(CLI::App& app, std::vector<std::size_t> default_layers) {
    layers = std::move(default_layers);
    app.add_option("--layers", layers, "groups per layer, comma separated, last must be 1")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--partition", partition, "random or balanced")->capture_default_str();
    app.add_option("--merge", merge, "pooled or pairwise")->capture_default_str();
  }

  [[nodiscard]] CascadePlan resolve() const {
    CascadePlan plan{layers, partition_from_string(partition), merge_from_string(merge)};
    validate_plan(plan);
    return plan;
  }
};

// Writes `text` to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw ConfigError("cannot write '" + path + "'");
  }
  f << text;
  if (!f) {
    throw ConfigError("write failed for '" + path + "'");
  }
}

json base_report(const std::string& command, const std::vector<std::string>& args) {
  return {{"format", "bcsvm-report"}, {"version", 1}, {"command", command}, {"argv", args}};
}

// ---------------------------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string data;
  std::string test;
  std::string model_out;
  std::string report_out;
  std::uint64_t seed = 1;
  std::size_t workers = 0;
  bool allow_nonconverged = false;
  SolverFlags solver;
  PlanFlags plan;
};

json cmd_train(const TrainArgs& a, const std::vector<std::string>& argv) {
  const auto train = load_libsvm(a.data, a.solver.parse_options());
  std::optional<Dataset> test;
  if (!a.test.empty()) {
    test = load_libsvm(a.test, a.solver.parse_options());
  }
  const auto cfg = a.solver.resolve(train.dim());
  const auto plan = a.plan.resolve();
  CascadeOptions opts;
  opts.workers = a.workers;
  opts.allow_nonconverged = a.allow_nonconverged;

  const auto result = run_cascade(train, plan, cfg, a.seed, opts);
  if (!a.model_out.empty()) {
    save_model(a.model_out, result.model);
  }

  json report = base_report("train", argv);
  report["dataset"] = dataset_json(train, a.data);
  report["config"] = {{"solver", solver_json(cfg)}, {"plan", plan_json(plan)}, {"seed", a.seed}, {"workers", a.workers}};
  report["layers"] = json::array();
  for (const auto& layer : result.layers) {
    report["layers"].push_back(layer_json(layer));
  }
  report["model"] = model_summary_json(result.model);
  report["model"]["converged"] = result.final_solution.converged;
  report["model"]["objective"] = result.final_solution.objective;
  report["model_path"] = a.model_out.empty() ? json(nullptr) : json(a.model_out);
  if (test) {
    report["test"] = dataset_json(*test, a.test);
    report["test_accuracy"] = accuracy(result.model, *test);
  }
  report["seconds"] = {{"train", result.total_seconds}};
  return report;
}

// ---------------------------------------------------------------------------------------------
// predict

struct PredictArgs {
  std::string model;
  std::string data;
  std::string output;
  std::string report_out;
  bool remap_labels = false;
};

json cmd_predict(const PredictArgs& a, const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  const auto model = load_model(a.model);
  ParseOptions po;
  po.remap_zero_label = a.remap_labels;
  const auto test = load_libsvm(a.data, po);
  if (test.size() == 0) {
    throw ConfigError("test set '" + a.data + "' is empty");
  }
  const auto start = std::chrono::steady_clock::now();
  std::string lines;
  std::size_t correct = 0;
  for (const auto& s : test.samples()) {
    const auto y = predict(model, s.features);
    correct += y == s.label ? 1 : 0;
    lines += y == Label::positive ? "+1\n" : "-1\n";
  }
  const double acc = static_cast<double>(correct) / static_cast<double>(test.size());
  const bool to_stdout = a.output.empty() || a.output == "-";
  emit(a.output, lines, out);

  json report = base_report("predict", argv);
  report["model_path"] = a.model;
  report["model"] = model_summary_json(model);
  report["test"] = dataset_json(test, a.data);
  report["test_accuracy"] = acc;
  report["predictions_path"] = to_stdout ? json(nullptr) : json(a.output);
  report["seconds"] = {{"predict", seconds_since(start)}};
  if (to_stdout) {
    // stdout already carries the labels
    err << "accuracy " << format_double(acc) << "\n";
  }
  return report;
}

// ---------------------------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string data;
  std::string test;
  std::string csv_out;
  std::string report_out;
  std::vector<std::uint64_t> seeds;
  std::size_t subsample = 0;
  std::uint64_t subsample_seed = 1;
  std::size_t workers = 0;
  bool allow_nonconverged = false;
  SolverFlags solver;
  std::vector<std::size_t> layers;
};

struct BenchRow {
  std::string method;
  std::uint64_t seed = 0;
  std::optional<double> accuracy;
  std::optional<std::size_t> sv_count;
  double seconds = 0.0;
  std::string error;
};

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string csv = "method,seed,accuracy,sv_count,train_seconds\n";
  for (const auto& r : rows) {
    csv += r.method + "," + std::to_string(r.seed) + "," + (r.accuracy ? format_double(*r.accuracy) : "nan") + "," +
           (r.sv_count ? std::to_string(*r.sv_count) : "nan") + "," + format_double(r.seconds) + "\n";
  }
  return csv;
}

json cmd_bench(const BenchArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  if (a.seeds.empty()) {
    throw ConfigError("bench needs at least one seed");
  }
  auto train = load_libsvm(a.data, a.solver.parse_options());
  const auto test = load_libsvm(a.test, a.solver.parse_options());
  if (test.size() == 0) {
    throw ConfigError("test set '" + a.test + "' is empty");
  }
  const std::size_t full_size = train.size();
  if (a.subsample != 0) {
    train = stratified_subsample(train, a.subsample, a.subsample_seed);
  }
  const auto cfg = a.solver.resolve(std::max(train.dim(), test.dim()));
  validate_plan({a.layers, PartitionStrategy::balanced, MergeStrategy::pooled});
  CascadeOptions opts;
  opts.workers = a.workers;
  opts.allow_nonconverged = a.allow_nonconverged;

  const std::vector<std::string> methods = {"direct", "csvm", "bcsvm"};
  std::vector<BenchRow> rows;
  for (const auto seed : a.seeds) {
    const auto shuffled = shuffle(train, seed);
    for (const auto& method : methods) {
      BenchRow row;
      row.method = method;
      row.seed = seed;
      const auto start = std::chrono::steady_clock::now();
      try {
        const std::vector<std::size_t> layers = method == "direct" ? std::vector<std::size_t>{1} : a.layers;
        const auto partition = method == "bcsvm" ? PartitionStrategy::balanced : PartitionStrategy::random;
        const auto result = run_cascade(shuffled, {layers, partition, MergeStrategy::pooled}, cfg, seed, opts);
        row.accuracy = accuracy(result.model, test);
        row.sv_count = result.model.sv_count();
      } catch (const Error& e) {
        row.error = e.what();
      }
      row.seconds = seconds_since(start);
      rows.push_back(std::move(row));
    }
  }
  emit(a.csv_out, bench_csv(rows), out);

  json report = base_report("bench", argv);
  report["dataset"] = dataset_json(train, a.data);
  report["dataset"]["full_size"] = full_size;
  report["test"] = dataset_json(test, a.test);
  report["config"] = {{"solver", solver_json(cfg)},
                      {"layers", a.layers},
                      {"merge", "pooled"},
                      {"seeds", a.seeds},
                      {"subsample", a.subsample == 0 ? json(nullptr) : json(a.subsample)},
                      {"subsample_seed", a.subsample_seed},
                      {"workers", a.workers}};
  report["runs"] = json::array();
  for (const auto& r : rows) {
    json run = {{"method", r.method},
                {"seed", r.seed},
                {"accuracy", r.accuracy ? json(*r.accuracy) : json(nullptr)},
                {"sv_count", r.sv_count ? json(*r.sv_count) : json(nullptr)},
                {"train_seconds", r.seconds}};
    if (!r.error.empty()) {
      run["error"] = r.error;
    }
    report["runs"].push_back(std::move(run));
  }

  // accuracy gap to direct training, per seed where both succeeded
  json aggregate = json::object();
  std::map<std::string, std::vector<double>> acc;
  std::map<std::string, std::vector<double>> gap;
  for (std::size_t s = 0; s < a.seeds.size(); ++s) {
    const auto& direct = rows[s * methods.size()];
    for (std::size_t k = 0; k < methods.size(); ++k) {
      const auto& r = rows[s * methods.size() + k];
      if (!r.accuracy) {
        continue;
      }
      acc[r.method].push_back(*r.accuracy);
      if (k > 0 && direct.accuracy) {
        gap[r.method].push_back(std::abs(*direct.accuracy - *r.accuracy));
      }
    }
  }
  for (const auto& method : methods) {
    json entry = {{"accuracy", summary_json(acc[method])}};
    if (method != "direct") {
      entry["abs_gap_to_direct"] = summary_json(gap[method]);
    }
    aggregate[method] = std::move(entry);
  }
  report["aggregate"] = std::move(aggregate);
  report["csv_path"] = a.csv_out.empty() || a.csv_out == "-" ? json(nullptr) : json(a.csv_out);
  return report;
}

// ---------------------------------------------------------------------------------------------
// retention

struct RetentionArgs {
  std::string data;
  std::string report_out;
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> layers = {2, 1};
  std::string merge = "pooled";
  std::size_t workers = 0;
  bool allow_nonconverged = false;
  SolverFlags solver;
};

json probabilities_json(const RetentionCensus& c);

json cmd_retention(const RetentionArgs& a, const std::vector<std::string>& argv) {
  if (a.seeds.empty()) {
    throw ConfigError("retention needs at least one seed");
  }
  const auto ds = load_libsvm(a.data, a.solver.parse_options());
  const auto cfg = a.solver.resolve(ds.dim());
  CascadeOptions opts;
  opts.workers = a.workers;
  opts.allow_nonconverged = a.allow_nonconverged;
  const auto merge = merge_from_string(a.merge);

  json report = base_report("retention", argv);
  report["dataset"] = dataset_json(ds, a.data);
  report["config"] = {{"solver", solver_json(cfg)},
                      {"layers", a.layers},
                      {"merge", to_string(merge)},
                      {"seeds", a.seeds},
                      {"workers", a.workers}};
  report["modes"] = json::object();
  std::optional<RetentionMeasurement> first;
  for (const auto partition : {PartitionStrategy::random, PartitionStrategy::balanced}) {
    const CascadePlan plan{a.layers, partition, merge};
    validate_plan(plan);
    auto m = measure_retention(ds, plan, cfg, a.seeds, opts);
    json seeds = json::array();
    std::vector<double> layer1;
    std::vector<double> final;
    for (const auto& s : m.samples) {
      seeds.push_back({{"seed", s.seed}, {"layer1_fraction", s.layer1_fraction}, {"final_fraction", s.final_fraction}});
      layer1.push_back(s.layer1_fraction);
      final.push_back(s.final_fraction);
    }
    report["modes"][to_string(partition)] = {
        {"per_seed", seeds}, {"layer1", summary_json(layer1)}, {"final", summary_json(final)}};
    if (!first) {
      first = std::move(m);
    }
  }
  const auto& direct = first->direct;
  report["direct"] = model_summary_json(direct.model);
  report["direct"]["converged"] = direct.converged;
  const auto c = census(ds, direct.alpha, direct.decision, a.layers.front());
  report["census"] = census_json(c);
  report["probabilities"] = probabilities_json(c);
  return report;
}

// ---------------------------------------------------------------------------------------------
// prob

struct ProbArgs {
  std::uint64_t psv = 0, pn = 0, nn = 0, pds = 0, nds = 0, nsv = 0, m = 2;
  std::string from_data;
  std::string report_out;
  SolverFlags solver;
};

json probabilities_json(const RetentionCensus& c) {
  json out = json::object();
  try {
    const auto counts = retention_counts_random(c);
    out["random"] = {{"probability", rational_json(retention_prob_random(c))}, {"counts", counts_json(counts)}};
  } catch (const ConfigError& e) {
    out["random"] = {{"probability", nullptr}, {"reason", e.what()}};
  }
  try {
    const auto counts = retention_counts_balanced(c);
    out["balanced"] = {{"probability", rational_json(retention_prob_balanced(c))}, {"counts", counts_json(counts)}};
  } catch (const ConfigError& e) {
    out["balanced"] = {{"probability", nullptr}, {"reason", e.what()}};
  }
  try {
    const auto d = denominator_inequality(c);
    out["denominators"] = {{"lhs", d.lhs.str()}, {"rhs", d.rhs.str()}, {"holds", d.holds}};
  } catch (const ConfigError& e) {
    out["denominators"] = {{"lhs", nullptr}, {"rhs", nullptr}, {"holds", nullptr}, {"reason", e.what()}};
  }
  if (out["random"]["probability"].is_object() && out["balanced"]["probability"].is_object()) {
    out["balanced_ge_random"] = retention_prob_balanced(c) >= retention_prob_random(c);
  } else {
    out["balanced_ge_random"] = nullptr;
  }
  return out;
}

json cmd_prob(const ProbArgs& a, const std::vector<std::string>& argv) {
  json report = base_report("prob", argv);
  RetentionCensus c;
  if (!a.from_data.empty()) {
    const auto ds = load_libsvm(a.from_data, a.solver.parse_options());
    const auto cfg = a.solver.resolve(ds.dim());
    const auto sol = solve_smo(ds, cfg);
    if (!sol.converged) {
      throw TrainingError("direct training did not converge within max_iter");
    }
    c = census(ds, sol.alpha, sol.decision, a.m);
    report["dataset"] = dataset_json(ds, a.from_data);
    report["config"] = {{"solver", solver_json(cfg)}};
    report["direct"] = model_summary_json(sol.model);
  } else {
    c.psv = a.psv;
    c.pn = a.pn;
    c.nn = a.nn;
    c.pds = a.pds;
    c.nds = a.nds;
    c.nsv = a.nsv;
    c.m = a.m;
  }
  // the random-grouping value is the one every census must support
  (void)retention_prob_random(c);
  report["census"] = census_json(c);
  report["probabilities"] = probabilities_json(c);
  return report;
}

// ---------------------------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string kind = "adult-like";
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  std::uint64_t model_seed = 1;
  std::size_t dim = 2;
  double gap = 0.05;
  double positive_share = 0.3;
  double separation = 2.0;
  std::string out;
};

std::string cmd_synth(const SynthArgs& a) {
  Dataset ds;
  if (a.kind == "adult-like") {
    ds = synthetic::adult_like(a.n, a.model_seed, a.seed);
  } else if (a.kind == "blobs") {
    ds = synthetic::noisy_blobs(a.n, a.seed, a.positive_share, a.separation);
  } else if (a.kind == "separable") {
    ds = synthetic::separable_fixture(a.n, a.dim, a.seed, a.gap);
  } else {
    throw ConfigError("unknown synthetic kind '" + a.kind + "' (expected adult-like, blobs or separable)");
  }
  return write_libsvm(ds);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse:
      return kParse;
    case ErrorKind::config:
      return kConfig;
    case ErrorKind::training:
      return kTraining;
  }
  return kInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cascade SVM training with class-balanced grouping", args.empty() ? "bcsvm" : args.front()};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bcsvm 1.0");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "train directly or as a cascade");
  train_cmd->add_option("--data", train.data, "LIBSVM training file")->required();
  train_cmd->add_option("--test", train.test, "optional LIBSVM test file");
  train_cmd->add_option("--model", train.model_out, "write the model here (JSON)");
  train_cmd->add_option("--report", train.report_out, "write the JSON report here instead of stdout");
  train_cmd->add_option("--seed", train.seed, "partition seed")->capture_default_str();
  train_cmd->add_option("--workers", train.workers, "parallel subset trainers, 0 = all cores")->capture_default_str();
  train_cmd->add_flag("--allow-nonconverged", train.allow_nonconverged, "keep going when a trainer hits max-iter");
  train.solver.attach(*train_cmd);
  train.plan.attach(*train_cmd, {1});

  PredictArgs pred;
  auto* pred_cmd = app.add_subcommand("predict", "label a LIBSVM file with a saved model");
  pred_cmd->add_option("--model", pred.model, "model JSON")->required();
  pred_cmd->add_option("--data", pred.data, "LIBSVM file to label")->required();
  pred_cmd->add_option("--output", pred.output, "one +1/-1 per line; stdout when omitted");
  pred_cmd->add_option("--report", pred.report_out, "write the JSON report here (stdout when predictions go to a file)");
  pred_cmd->add_flag("--remap-labels", pred.remap_labels, "accept {0,1} labels as {-1,+1}");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "compare direct, random-grouped and balanced cascades");
  bench_cmd->add_option("--data", bench.data, "LIBSVM training file")->required();
  bench_cmd->add_option("--test", bench.test, "LIBSVM test file")->required();
  bench_cmd->add_option("--seeds", bench.seeds, "comma separated seeds")->delimiter(',')->required();
  bench_cmd->add_option("--csv", bench.csv_out, "write the CSV table here (stdout when omitted)");
  bench_cmd->add_option("--report", bench.report_out, "write the JSON report here");
  bench_cmd->add_option("--subsample", bench.subsample, "stratified training subsample size, 0 = all");
  bench_cmd->add_option("--subsample-seed", bench.subsample_seed, "seed of the subsample")->capture_default_str();
  bench_cmd->add_option("--workers", bench.workers, "parallel subset trainers, 0 = all cores")->capture_default_str();
  bench_cmd->add_flag("--allow-nonconverged", bench.allow_nonconverged, "keep going when a trainer hits max-iter");
  bench.layers = {8, 1};
  bench_cmd->add_option("--layers", bench.layers, "cascade groups per layer")->delimiter(',')->capture_default_str();
  bench.solver.attach(*bench_cmd);

  RetentionArgs ret;
  auto* ret_cmd = app.add_subcommand("retention", "measure how many global SVs survive grouping");
  ret_cmd->add_option("--data", ret.data, "LIBSVM training file")->required();
  ret_cmd->add_option("--seeds", ret.seeds, "comma separated seeds")->delimiter(',')->required();
  ret_cmd->add_option("--layers", ret.layers, "cascade groups per layer")->delimiter(',')->capture_default_str();
  ret_cmd->add_option("--merge", ret.merge, "pooled or pairwise")->capture_default_str();
  ret_cmd->add_option("--report", ret.report_out, "write the JSON report here instead of stdout");
  ret_cmd->add_option("--workers", ret.workers, "seeds run concurrently, 0 = all cores")->capture_default_str();
  ret_cmd->add_flag("--allow-nonconverged", ret.allow_nonconverged, "keep going when a trainer hits max-iter");
  ret.solver.attach(*ret_cmd);

  ProbArgs prob;
  auto* prob_cmd = app.add_subcommand("prob", "exact retention probabilities for one subset draw");
  prob_cmd->add_option("--psv", prob.psv, "positive support vectors");
  prob_cmd->add_option("--pn", prob.pn, "positive noise points");
  prob_cmd->add_option("--nn", prob.nn, "negative noise points");
  prob_cmd->add_option("--pds", prob.pds, "common positives");
  prob_cmd->add_option("--nds", prob.nds, "common negatives");
  prob_cmd->add_option("--nsv", prob.nsv, "negative support vectors");
  prob_cmd->add_option("--m", prob.m, "number of groups")->capture_default_str();
  auto* from_data = prob_cmd->add_option("--from-data", prob.from_data, "derive the counts by training on this file");
  for (const char* name : {"--psv", "--pn", "--nn", "--pds", "--nds", "--nsv"}) {
    prob_cmd->get_option(name)->excludes(from_data);
  }
  prob_cmd->add_option("--report", prob.report_out, "write the JSON report here instead of stdout");
  prob.solver.attach(*prob_cmd);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic LIBSVM dataset");
  synth_cmd->add_option("--kind", synth.kind, "adult-like, blobs or separable")->capture_default_str();
  synth_cmd->add_option("--n", synth.n, "sample count")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "sample seed")->capture_default_str();
  synth_cmd->add_option("--model-seed", synth.model_seed, "adult-like: seed of the labelling rule")->capture_default_str();
  synth_cmd->add_option("--dim", synth.dim, "separable: dimension")->capture_default_str();
  synth_cmd->add_option("--gap", synth.gap, "separable: empty band around the hyperplane")->capture_default_str();
  synth_cmd->add_option("--positive-share", synth.positive_share, "blobs: share of positives")->capture_default_str();
  synth_cmd->add_option("--separation", synth.separation, "blobs: distance between centres")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "output file (stdout when omitted)");

  std::vector<const char*> cargv;
  cargv.reserve(args.size());
  for (const auto& s : args) {
    cargv.push_back(s.c_str());
  }
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*train_cmd) {
      const auto report = cmd_train(train, args);
      emit(train.report_out, report.dump(2) + "\n", out);
    } else if (*pred_cmd) {
      const auto report = cmd_predict(pred, args, out, err);
      const bool stdout_taken = pred.output.empty() || pred.output == "-";
      if (!pred.report_out.empty()) {
        emit(pred.report_out, report.dump(2) + "\n", out);
      } else if (!stdout_taken) {
        out << report.dump(2) << "\n";
      }
    } else if (*bench_cmd) {
      const auto report = cmd_bench(bench, args, out);
      if (!bench.report_out.empty()) {
        emit(bench.report_out, report.dump(2) + "\n", out);
      } else if (!bench.csv_out.empty() && bench.csv_out != "-") {
        out << report.dump(2) << "\n";
      }
    } else if (*ret_cmd) {
      const auto report = cmd_retention(ret, args);
      emit(ret.report_out, report.dump(2) + "\n", out);
    } else if (*prob_cmd) {
      const auto report = cmd_prob(prob, args);
      emit(prob.report_out, report.dump(2) + "\n", out);
    } else if (*synth_cmd) {
      emit(synth.out, cmd_synth(synth), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace bcsvm::cli
