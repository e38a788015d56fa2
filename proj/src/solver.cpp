#include "bcsvm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcsvm/error.hpp"

namespace bcsvm {

void SolverConfig::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) {
    throw ConfigError("cost C must be positive, got " + std::to_string(C));
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw ConfigError("tolerance must be positive, got " + std::to_string(tol));
  }
  if (max_iter == 0) {
    throw ConfigError("max_iter must be positive");
  }
  kernel.validate();
}

SvmModel::SvmModel(std::vector<Sample> svs, std::vector<double> coef, double bias, KernelSpec kernel, double C)
    : svs_(std::move(svs)), coef_(std::move(coef)), bias_(bias), kernel_(kernel), C_(C) {
  if (svs_.size() != coef_.size()) {
    throw std::invalid_argument("support vector and coefficient counts differ");
  }
  sv_sq_norms_.reserve(svs_.size());
  for (const auto& s : svs_) {
    sv_sq_norms_.push_back(squared_norm(s.features));
  }
}

std::vector<std::size_t> SvmModel::sv_ids() const {
  std::vector<std::size_t> ids;
  ids.reserve(svs_.size());
  for (const auto& s : svs_) {
    ids.push_back(s.id);
  }
  return ids;
}

double SvmModel::decision_value(const SparseVector& x) const {
  const double x_norm = kernel_.kind == KernelKind::rbf ? squared_norm(x) : 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < svs_.size(); ++i) {
    sum += coef_[i] * kernel_eval(kernel_, svs_[i].features, x, sv_sq_norms_[i], x_norm);
  }
  return sum + bias_;
}

namespace {

constexpr double kTau = 1e-12;

// Gradient bookkeeping follows the minimisation form: min 1/2 a'Qa - e'a with
// Q_ij = y_i y_j K_ij, G = Qa - e.
class Smo {
 public:
  Smo(const Dataset& ds, const SolverConfig& cfg)
      : ds_(ds), cfg_(cfg), n_(ds.size()), kernel_(ds, cfg.kernel, cache_bytes_from_mb(cfg.cache_mb)) {
    y_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      y_[i] = sign_of(ds[i].label);
    }
    alpha_.assign(n_, 0.0);
    grad_.assign(n_, -1.0);
  }

  SmoSolution run() {
    SmoSolution out;
    std::size_t iter = 0;
    double gap = 0.0;
    bool converged = false;
    while (true) {
      std::size_t i = 0;
      std::size_t j = 0;
      gap = select(i, j);
      if (gap <= cfg_.tol) {
        converged = true;
        break;
      }
      if (iter >= cfg_.max_iter) {
        break;
      }
      update(i, j);
      ++iter;
    }

    out.alpha = alpha_;
    out.iterations = iter;
    out.converged = converged;
    out.kkt_gap = gap;
    const double bias = compute_bias();

    std::vector<Sample> svs;
    std::vector<double> coef;
    double objective = 0.0;
    out.decision.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      objective += alpha_[k] * (1.0 - grad_[k]);
      // sum_j coef_j K(x_j, x_k) = y_k (G_k + 1)
      out.decision[k] = y_[k] * (grad_[k] + 1.0) + bias;
      if (alpha_[k] > kSupportThreshold) {
        svs.push_back(ds_[k]);
        coef.push_back(y_[k] * alpha_[k]);
      }
    }
    out.objective = 0.5 * objective;
    out.model = SvmModel(std::move(svs), std::move(coef), bias, cfg_.kernel, cfg_.C);
    out.cache_stats = kernel_.cache().stats();
    return out;
  }

 private:
  [[nodiscard]] bool in_up(std::size_t t) const {
    return (y_[t] > 0) ? alpha_[t] < cfg_.C : alpha_[t] > 0.0;
  }
  [[nodiscard]] bool in_low(std::size_t t) const {
    return (y_[t] > 0) ? alpha_[t] > 0.0 : alpha_[t] < cfg_.C;
  }

  // i maximises -y_t G_t over I_up, j minimises it over I_low; returns the gap.
  double select(std::size_t& i, std::size_t& j) const {
    double g_max = -std::numeric_limits<double>::infinity();
    double g_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n_; ++t) {
      const double v = -y_[t] * grad_[t];
      if (in_up(t) && v > g_max) {
        g_max = v;
        i = t;
      }
      if (in_low(t) && v < g_min) {
        g_min = v;
        j = t;
      }
    }
    return g_max - g_min;
  }

  void update(std::size_t i, std::size_t j) {
    const KernelRow row_i = kernel_.row(i);
    const KernelRow row_j = kernel_.row(j);
    const auto& ki = *row_i;
    const auto& kj = *row_j;
    const double C = cfg_.C;
    const double qii = kernel_.diagonal(i);
    const double qjj = kernel_.diagonal(j);
    const double qij = y_[i] * y_[j] * ki[j];
    const double old_ai = alpha_[i];
    const double old_aj = alpha_[j];
    double& ai = alpha_[i];
    double& aj = alpha_[j];

    if (y_[i] != y_[j]) {
      double quad = qii + qjj + 2.0 * qij;
      if (quad <= 0.0) {
        quad = kTau;
      }
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) {
          aj = 0.0;
          ai = diff;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > C) {
          ai = C;
          aj = C - diff;
        }
      } else if (aj > C) {
        aj = C;
        ai = C + diff;
      }
    } else {
      double quad = qii + qjj - 2.0 * qij;
      if (quad <= 0.0) {
        quad = kTau;
      }
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > C) {
        if (ai > C) {
          ai = C;
          aj = sum - C;
        }
      } else if (aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > C) {
        if (aj > C) {
          aj = C;
          ai = sum - C;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }

    const double dai = (ai - old_ai) * y_[i];
    const double daj = (aj - old_aj) * y_[j];
    for (std::size_t k = 0; k < n_; ++k) {
      grad_[k] += y_[k] * (ki[k] * dai + kj[k] * daj);
    }
  }

  [[nodiscard]] double compute_bias() const {
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < n_; ++t) {
      const double yg = y_[t] * grad_[t];
      const bool at_upper = alpha_[t] >= cfg_.C;
      const bool at_lower = alpha_[t] <= 0.0;
      if (at_upper) {
        if (y_[t] < 0) {
          ub = std::min(ub, yg);
        } else {
          lb = std::max(lb, yg);
        }
      } else if (at_lower) {
        if (y_[t] > 0) {
          ub = std::min(ub, yg);
        } else {
          lb = std::max(lb, yg);
        }
      } else {
        ++n_free;
        sum_free += yg;
      }
    }
    double rho = 0.0;
    if (n_free > 0) {
      rho = sum_free / static_cast<double>(n_free);
    } else if (std::isfinite(ub) && std::isfinite(lb)) {
      rho = 0.5 * (ub + lb);
    } else if (std::isfinite(ub)) {
      rho = ub;
    } else if (std::isfinite(lb)) {
      rho = lb;
    }
    return -rho;
  }

  const Dataset& ds_;
  const SolverConfig& cfg_;
  std::size_t n_;
  KernelMatrix kernel_;
  std::vector<double> y_;
  std::vector<double> alpha_;
  std::vector<double> grad_;
};

}  // namespace

SmoSolution solve_smo(const Dataset& ds, const SolverConfig& cfg) {
  cfg.validate();
  if (ds.positive_count() == 0 || ds.negative_count() == 0) {
    throw TrainingError("training needs samples of both classes (have " + std::to_string(ds.positive_count()) +
                        " positive, " + std::to_string(ds.negative_count()) + " negative)");
  }
  return Smo(ds, cfg).run();
}

SvmModel smo_train(const Dataset& ds, const SolverConfig& cfg) { return solve_smo(ds, cfg).model; }

Label predict(const SvmModel& m, const SparseVector& x) {
  return m.decision_value(x) >= 0.0 ? Label::positive : Label::negative;
}

double accuracy(const SvmModel& m, const Dataset& test) {
  if (test.empty()) {
    throw ConfigError("accuracy needs a non-empty test set");
  }
  std::size_t correct = 0;
  for (const auto& s : test.samples()) {
    if (predict(m, s.features) == s.label) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace bcsvm
