#include "report.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "bcsvm/model_io.hpp"

namespace bcsvm::cli {

json dataset_json(const Dataset& ds, const std::string& path) {
  return {{"path", path},
          {"n", ds.size()},
          {"dim", ds.dim()},
          {"positives", ds.positive_count()},
          {"negatives", ds.negative_count()}};
}

json solver_json(const SolverConfig& cfg) {
  return {{"kernel", kernel_to_json(cfg.kernel)},
          {"C", cfg.C},
          {"tol", cfg.tol},
          {"max_iter", cfg.max_iter},
          {"cache_mb", cfg.cache_mb}};
}

json plan_json(const CascadePlan& plan) {
  return {{"layers", plan.layers}, {"partition", to_string(plan.partition)}, {"merge", to_string(plan.merge)}};
}

json layer_json(const LayerReport& layer) {
  return {{"layer_index", layer.layer_index},
          {"group_count", layer.group_count},
          {"subset_sizes", layer.subset_sizes},
          {"sv_counts_per_subset", layer.sv_counts_per_subset},
          {"iterations_per_subset", layer.iterations_per_subset},
          {"subset_seconds", layer.subset_seconds},
          {"merged_size", layer.merged_size},
          {"total_seconds", layer.total_seconds}};
}

json model_summary_json(const SvmModel& model) {
  std::size_t positives = 0;
  for (const auto& sv : model.support_vectors()) {
    positives += sv.label == Label::positive ? 1 : 0;
  }
  return {{"sv_count", model.sv_count()},
          {"positive_svs", positives},
          {"negative_svs", model.sv_count() - positives},
          {"bias", model.bias()}};
}

json census_json(const RetentionCensus& c) {
  return {{"psv", c.psv}, {"nsv", c.nsv}, {"pn", c.pn},          {"nn", c.nn},
          {"pds", c.pds}, {"nds", c.nds}, {"m", c.m},            {"pt", c.pt()},
          {"nt", c.nt()}, {"total", c.total()}, {"t", c.subset_size()}, {"p", c.positive_quota()},
          {"n", c.negative_quota()}};
}

json rational_json(const BigRational& q) {
  return {{"fraction", to_fraction_string(q)}, {"decimal", to_decimal_string(q, 12)}};
}

json counts_json(const RetentionCounts& counts) {
  // big integers travel as strings
  return {{"case1", counts.case1.str()}, {"case2", counts.case2.str()}, {"denominator", counts.denominator.str()}};
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) {
    return s;
  }
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (const auto v : values) {
      ss += (v - s.mean) * (v - s.mean);
    }
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

json summary_json(const std::vector<double>& values) {
  const auto s = summarize(values);
  return {{"count", values.size()}, {"mean", s.mean}, {"stddev", s.stddev}};
}

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    return "nan";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace bcsvm::cli
