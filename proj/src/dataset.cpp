#include "bcsvm/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "bcsvm/error.hpp"
#include "bcsvm/random.hpp"

namespace bcsvm {

SparseVector::SparseVector(std::vector<FeatureEntry> entries) {
  entries_.reserve(entries.size());
  std::uint32_t previous = 0;
  for (const auto& e : entries) {
    if (e.index == 0) {
      throw std::invalid_argument("feature index 0 is not allowed (indices are 1-based)");
    }
    if (e.index <= previous) {
      throw std::invalid_argument("feature indices must be strictly increasing");
    }
    previous = e.index;
    if (e.value != 0.0) {
      entries_.push_back(e);
    }
  }
}

Dataset::Dataset(std::vector<Sample> samples, std::optional<std::size_t> dim) : samples_(std::move(samples)) {
  std::size_t max_index = 0;
  for (const auto& s : samples_) {
    max_index = std::max<std::size_t>(max_index, s.features.max_index());
    if (s.label == Label::positive) {
      ++positives_;
    }
  }
  if (dim && *dim < max_index) {
    throw std::invalid_argument("dataset dim " + std::to_string(*dim) + " is below the largest feature index " +
                                std::to_string(max_index));
  }
  dim_ = dim.value_or(max_index);
}

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && is_blank(line[pos])) {
      ++pos;
    }
    const std::size_t start = pos;
    while (pos < line.size() && !is_blank(line[pos])) {
      ++pos;
    }
    if (pos > start) {
      tokens.push_back(line.substr(start, pos - start));
    }
  }
  return tokens;
}

template <typename T>
bool parse_whole(std::string_view token, T& out) {
  if (token.empty()) {
    return false;
  }
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

Label parse_label(std::string_view token, std::size_t line, const ParseOptions& options) {
  std::string_view digits = token;
  if (!digits.empty() && digits.front() == '+') {
    digits.remove_prefix(1);
  }
  double value = 0.0;
  if (!parse_whole(digits, value)) {
    throw ParseError(line, "cannot read label '" + std::string(token) + "'");
  }
  if (value == 1.0) {
    return Label::positive;
  }
  if (value == -1.0) {
    return Label::negative;
  }
  if (value == 0.0 && options.remap_zero_label) {
    return Label::negative;
  }
  throw LabelError(line, "label '" + std::string(token) + "' is not binary (expected +1 or -1" +
                             (options.remap_zero_label ? ", or 0)" : "; enable 0/1 remapping for 0)"));
}

Sample parse_line(std::string_view line, std::size_t line_no, std::size_t id, const ParseOptions& options) {
  const auto tokens = tokenize(line);
  Sample sample;
  sample.id = id;
  sample.label = parse_label(tokens.front(), line_no, options);

  std::vector<FeatureEntry> entries;
  entries.reserve(tokens.size() - 1);
  std::uint32_t previous = 0;
  for (std::size_t t = 1; t < tokens.size(); ++t) {
    const auto token = tokens[t];
    const auto colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, "expected index:value, got '" + std::string(token) + "'");
    }
    std::uint32_t index = 0;
    double value = 0.0;
    if (!parse_whole(token.substr(0, colon), index)) {
      throw ParseError(line_no, "bad feature index in '" + std::string(token) + "'");
    }
    if (!parse_whole(token.substr(colon + 1), value)) {
      throw ParseError(line_no, "bad feature value in '" + std::string(token) + "'");
    }
    if (index == 0) {
      throw ParseError(line_no, "feature index 0 is not allowed (indices are 1-based)");
    }
    if (index <= previous) {
      throw ParseError(line_no, "feature indices are not strictly increasing at '" + std::string(token) + "'");
    }
    previous = index;
    entries.push_back({index, value});
  }
  sample.features = SparseVector(std::move(entries));
  return sample;
}

}  // namespace

Dataset parse_libsvm(std::string_view text, const ParseOptions& options) {
  std::vector<Sample> samples;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (std::all_of(line.begin(), line.end(), is_blank)) {
      continue;
    }
    samples.push_back(parse_line(line, line_no, samples.size(), options));
  }
  std::size_t max_index = 0;
  for (const auto& s : samples) {
    max_index = std::max<std::size_t>(max_index, s.features.max_index());
  }
  return Dataset(std::move(samples), std::max(max_index, options.dim.value_or(0)));
}

Dataset parse_libsvm(std::istream& in, const ParseOptions& options) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_libsvm(std::string_view(text), options);
}

Dataset load_libsvm(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(0, "cannot open '" + path + "'");
  }
  return parse_libsvm(in, options);
}

void write_libsvm(std::ostream& out, const Dataset& ds) {
  std::array<char, 64> buf{};
  for (const auto& s : ds.samples()) {
    out << (s.label == Label::positive ? "+1" : "-1");
    for (const auto& e : s.features.entries()) {
      const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), e.value);
      out << ' ' << e.index << ':' << std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data()));
    }
    out << '\n';
  }
}

std::string write_libsvm(const Dataset& ds) {
  std::ostringstream out;
  write_libsvm(out, ds);
  return out.str();
}

void save_libsvm(const std::string& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write '" + path + "'");
  }
  write_libsvm(out, ds);
}

Dataset shuffle(const Dataset& ds, std::uint64_t seed) {
  std::vector<Sample> samples(ds.samples().begin(), ds.samples().end());
  Xoshiro256 rng(seed);
  fisher_yates(std::span<Sample>(samples), rng);
  return Dataset(std::move(samples), ds.dim());
}

std::pair<Dataset, Dataset> split_by_class(const Dataset& ds) {
  std::vector<Sample> positives;
  std::vector<Sample> negatives;
  positives.reserve(ds.positive_count());
  negatives.reserve(ds.negative_count());
  for (const auto& s : ds.samples()) {
    (s.label == Label::positive ? positives : negatives).push_back(s);
  }
  return {Dataset(std::move(positives), ds.dim()), Dataset(std::move(negatives), ds.dim())};
}

std::vector<std::size_t> chunk_sizes(std::size_t n, std::size_t k) {
  std::vector<std::size_t> sizes(k, k == 0 ? 0 : n / k);
  for (std::size_t i = 0; i < (k == 0 ? 0 : n % k); ++i) {
    ++sizes[i];
  }
  return sizes;
}

std::vector<Dataset> partition_random(const Dataset& ds, std::size_t k, std::uint64_t seed) {
  if (k == 0) {
    throw PartitionError("group count must be at least 1");
  }
  if (k > ds.size()) {
    throw PartitionError("cannot split " + std::to_string(ds.size()) + " samples into " + std::to_string(k) +
                         " groups");
  }
  const Dataset shuffled = shuffle(ds, seed);
  std::vector<Dataset> parts;
  parts.reserve(k);
  auto it = shuffled.samples().begin();
  for (const auto size : chunk_sizes(ds.size(), k)) {
    parts.emplace_back(std::vector<Sample>(it, it + static_cast<std::ptrdiff_t>(size)), ds.dim());
    it += static_cast<std::ptrdiff_t>(size);
  }
  return parts;
}

std::vector<Dataset> partition_balanced(const Dataset& ds, std::size_t k, std::uint64_t seed) {
  if (k == 0) {
    throw PartitionError("group count must be at least 1");
  }
  if (ds.positive_count() < k || ds.negative_count() < k) {
    throw PartitionError("balanced split into " + std::to_string(k) + " groups needs at least " + std::to_string(k) +
                         " samples of each class (have " + std::to_string(ds.positive_count()) + " positive, " +
                         std::to_string(ds.negative_count()) + " negative)");
  }
  auto [pos_ds, neg_ds] = split_by_class(ds);
  std::vector<Sample> positives(pos_ds.samples().begin(), pos_ds.samples().end());
  std::vector<Sample> negatives(neg_ds.samples().begin(), neg_ds.samples().end());
  Xoshiro256 rng(seed);
  fisher_yates(std::span<Sample>(positives), rng);
  fisher_yates(std::span<Sample>(negatives), rng);

  const auto pos_sizes = chunk_sizes(positives.size(), k);
  const auto neg_sizes = chunk_sizes(negatives.size(), k);
  std::vector<Dataset> parts;
  parts.reserve(k);
  std::size_t p = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Sample> part;
    part.reserve(pos_sizes[i] + neg_sizes[i]);
    part.insert(part.end(), positives.begin() + static_cast<std::ptrdiff_t>(p),
                positives.begin() + static_cast<std::ptrdiff_t>(p + pos_sizes[i]));
    part.insert(part.end(), negatives.begin() + static_cast<std::ptrdiff_t>(n),
                negatives.begin() + static_cast<std::ptrdiff_t>(n + neg_sizes[i]));
    p += pos_sizes[i];
    n += neg_sizes[i];
    parts.emplace_back(std::move(part), ds.dim());
  }
  return parts;
}

Dataset stratified_subsample(const Dataset& ds, std::size_t n, std::uint64_t seed) {
  if (n == 0 || n > ds.size()) {
    throw PartitionError("subsample size " + std::to_string(n) + " must be in [1, " + std::to_string(ds.size()) + "]");
  }
  const std::size_t total_pos = ds.positive_count();
  const std::size_t total_neg = ds.negative_count();
  auto keep_pos = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * static_cast<double>(total_pos) / static_cast<double>(ds.size())));
  if (total_pos > 0 && total_neg > 0 && n >= 2) {
    keep_pos = std::clamp<std::size_t>(keep_pos, 1, n - 1);
  }
  keep_pos = std::clamp(keep_pos, n - std::min(n, total_neg), std::min(n, total_pos));

  std::vector<std::size_t> pos_idx;
  std::vector<std::size_t> neg_idx;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    (ds.samples()[i].label == Label::positive ? pos_idx : neg_idx).push_back(i);
  }
  Xoshiro256 rng(seed);
  fisher_yates(std::span<std::size_t>(pos_idx), rng);
  fisher_yates(std::span<std::size_t>(neg_idx), rng);
  std::vector<std::size_t> chosen(pos_idx.begin(), pos_idx.begin() + static_cast<std::ptrdiff_t>(keep_pos));
  chosen.insert(chosen.end(), neg_idx.begin(), neg_idx.begin() + static_cast<std::ptrdiff_t>(n - keep_pos));
  std::sort(chosen.begin(), chosen.end());

  std::vector<Sample> samples;
  samples.reserve(n);
  for (const auto i : chosen) {
    samples.push_back(ds.samples()[i]);
  }
  return Dataset(std::move(samples), ds.dim());
}

Dataset concatenate(std::span<const Dataset> parts) {
  std::size_t total = 0;
  std::size_t dim = 0;
  for (const auto& p : parts) {
    total += p.size();
    dim = std::max(dim, p.dim());
  }
  std::vector<Sample> samples;
  samples.reserve(total);
  for (const auto& p : parts) {
    samples.insert(samples.end(), p.samples().begin(), p.samples().end());
  }
  return Dataset(std::move(samples), dim);
}

}  // namespace bcsvm
