#include "bcsvm/analysis.hpp"

#include <algorithm>
#include <unordered_set>

#include "bcsvm/error.hpp"
#include "bcsvm/parallel.hpp"

namespace bcsvm {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::string to_fraction_string(const BigRational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

std::string to_decimal_string(const BigRational& q, int digits) {
  BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  const bool negative = num < 0;
  if (negative) {
    num = -num;
  }
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) {
    scale *= 10;
  }
  const BigInt scaled = (2 * num * scale + den) / (2 * den);
  const BigInt whole = scaled / scale;
  std::string frac = BigInt(scaled % scale).str();
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
  if (digits > 0) {
    out += "." + frac;
  }
  return out;
}

double to_double(const BigRational& q) { return q.convert_to<double>(); }

std::string to_string(SampleCategory c) {
  switch (c) {
    case SampleCategory::support_vector:
      return "support_vector";
    case SampleCategory::noise:
      return "noise";
    case SampleCategory::common:
      return "common";
  }
  return "unknown";
}

SampleCategory categorize(Label y, double alpha, double decision) noexcept {
  if (sign_of(y) * decision < 0.0) {
    return SampleCategory::noise;
  }
  if (alpha > kSupportThreshold) {
    return SampleCategory::support_vector;
  }
  return SampleCategory::common;
}

std::vector<SampleCategory> categorize_all(const Dataset& ds, std::span<const double> alpha,
                                           std::span<const double> decision) {
  if (alpha.size() != ds.size() || decision.size() != ds.size()) {
    throw ConfigError("census needs one alpha and one decision value per sample (dataset has " +
                      std::to_string(ds.size()) + ", got " + std::to_string(alpha.size()) + " and " +
                      std::to_string(decision.size()) + ")");
  }
  std::vector<SampleCategory> out;
  out.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out.push_back(categorize(ds[i].label, alpha[i], decision[i]));
  }
  return out;
}

RetentionCensus census(const Dataset& ds, std::span<const double> alpha, std::span<const double> decision,
                       std::uint64_t m) {
  if (m == 0) {
    throw ConfigError("group count m must be at least 1");
  }
  const auto categories = categorize_all(ds, alpha, decision);
  RetentionCensus c;
  c.m = m;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const bool pos = ds[i].label == Label::positive;
    switch (categories[i]) {
      case SampleCategory::support_vector:
        ++(pos ? c.psv : c.nsv);
        break;
      case SampleCategory::noise:
        ++(pos ? c.pn : c.nn);
        break;
      case SampleCategory::common:
        ++(pos ? c.pds : c.nds);
        break;
    }
  }
  return c;
}

namespace {

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

// Number of size-k draws from a pool of `pool` items that include at least one item from each of
// the disjoint marked groups (inclusion-exclusion over which groups are missed).
BigInt draws_hitting_all(std::uint64_t pool, std::span<const std::uint64_t> groups, std::uint64_t k) {
  BigInt total = 0;
  const std::size_t subsets = std::size_t{1} << groups.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::uint64_t missed = 0;
    int parity = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if ((mask >> g) & 1U) {
        missed += groups[g];
        parity ^= 1;
      }
    }
    const BigInt term = binomial(as_int(pool - missed), as_int(k));
    if (parity != 0) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

void require_groups(const RetentionCensus& c) {
  if (c.m == 0) {
    throw ConfigError("group count m must be at least 1");
  }
}

}  // namespace

RetentionCounts retention_counts_random(const RetentionCensus& c) {
  require_groups(c);
  const std::uint64_t total = c.total();
  const std::uint64_t t = c.subset_size();
  if (t == 0) {
    throw ConfigError("subset size T/m = " + std::to_string(total) + "/" + std::to_string(c.m) + " rounds to 0");
  }
  if (t > total) {
    throw ConfigError("subset size exceeds the dataset size");
  }
  const std::uint64_t neg_pool = c.nds + c.nsv;

  RetentionCounts out;
  // Case 1: >= 1 pSv, any pDS, any negative non-noise, no noise at all.
  const std::uint64_t case1_groups[] = {c.psv};
  out.case1 = draws_hitting_all(c.psv + c.pds + neg_pool, case1_groups, t);
  // Case 2: >= 1 each of pSv, pN, nN; pDS and the negative pool unrestricted.
  const std::uint64_t case2_groups[] = {c.psv, c.pn, c.nn};
  out.case2 = draws_hitting_all(total, case2_groups, t);
  out.denominator = binomial(as_int(total), as_int(t));
  return out;
}

RetentionCounts retention_counts_balanced(const RetentionCensus& c) {
  require_groups(c);
  const std::uint64_t p = c.positive_quota();
  const std::uint64_t n = c.negative_quota();
  if (p == 0 || n == 0) {
    throw ConfigError("balanced subsets need at least one sample of each class (pT/m = " + std::to_string(p) +
                      ", nT/m = " + std::to_string(n) + ")");
  }
  const std::uint64_t neg_pool = c.nds + c.nsv;

  RetentionCounts out;
  const std::uint64_t case1_pos_groups[] = {c.psv};
  out.case1 = draws_hitting_all(c.psv + c.pds, case1_pos_groups, p) * binomial(as_int(neg_pool), as_int(n));
  const std::uint64_t case2_pos_groups[] = {c.psv, c.pn};
  const std::uint64_t case2_neg_groups[] = {c.nn};
  out.case2 = draws_hitting_all(c.pt(), case2_pos_groups, p) * draws_hitting_all(c.nt(), case2_neg_groups, n);
  out.denominator = binomial(as_int(c.pt()), as_int(p)) * binomial(as_int(c.nt()), as_int(n));
  return out;
}

namespace {
BigRational probability(const RetentionCounts& counts) {
  return BigRational(counts.case1 + counts.case2, counts.denominator);
}
}  // namespace

BigRational retention_prob_random(const RetentionCensus& c) { return probability(retention_counts_random(c)); }

BigRational retention_prob_balanced(const RetentionCensus& c) { return probability(retention_counts_balanced(c)); }

DenominatorComparison denominator_inequality(const RetentionCensus& c) {
  require_groups(c);
  const std::uint64_t p = c.positive_quota();
  const std::uint64_t n = c.negative_quota();
  const std::uint64_t t = c.subset_size();
  if (p < 1 || p > c.pt() || n < 1 || n > c.nt()) {
    throw ConfigError("denominator comparison needs 1 <= p <= pT and 1 <= n <= nT (p = " + std::to_string(p) +
                      ", n = " + std::to_string(n) + ")");
  }
  if (p + n != t) {
    throw ConfigError("denominator comparison needs p + n = t (p = " + std::to_string(p) + ", n = " +
                      std::to_string(n) + ", t = " + std::to_string(t) + "); choose m dividing pT and nT");
  }
  DenominatorComparison out;
  out.lhs = binomial(as_int(c.total()), as_int(t));
  out.rhs = binomial(as_int(c.pt()), as_int(p)) * binomial(as_int(c.nt()), as_int(n));
  out.holds = out.lhs > out.rhs;
  return out;
}

RetentionMeasurement measure_retention(const Dataset& ds, const CascadePlan& plan, const SolverConfig& cfg,
                                       std::span<const std::uint64_t> seeds, const CascadeOptions& options) {
  validate_plan(plan);
  // Identity = position in ds, whatever ids the caller's samples carried.
  std::vector<Sample> samples(ds.samples().begin(), ds.samples().end());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i].id = i;
  }
  const Dataset indexed(std::move(samples), ds.dim());

  RetentionMeasurement out;
  out.direct = solve_smo(indexed, cfg);
  if (!out.direct.converged && !options.allow_nonconverged) {
    throw TrainingError("direct training on the full dataset did not converge");
  }
  out.global_sv_ids = out.direct.model.sv_ids();
  const std::unordered_set<std::size_t> global(out.global_sv_ids.begin(), out.global_sv_ids.end());

  auto retained = [&](std::span<const std::size_t> ids) {
    if (global.empty()) {
      return 1.0;
    }
    std::size_t hits = 0;
    for (const auto id : ids) {
      hits += global.count(id);
    }
    return static_cast<double>(hits) / static_cast<double>(global.size());
  };

  out.samples.resize(seeds.size());
  CascadeOptions inner = options;
  inner.workers = 1;
  parallel_for(seeds.size(), options.workers, [&](std::size_t k) {
    const auto result = run_cascade(indexed, plan, cfg, seeds[k], inner);
    const auto final_ids = result.model.sv_ids();
    out.samples[k] = {seeds[k], retained(result.layers.front().merged_ids), retained(final_ids)};
  });
  return out;
}

}  // namespace bcsvm
