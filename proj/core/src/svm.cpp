#include "adasvm/svm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "adasvm/adaboost.hpp"  // sign_or_positive

namespace adasvm {

namespace {

constexpr double kTau = 1e-12;

// Full Gram matrices are cached up to this many rows (3400^2 doubles,
// ~92 MB transient); beyond that rows are recomputed on demand.
constexpr std::size_t kDenseGramMaxRows = 3400;

// Kernel rows for Q_ij = y_i y_j <z_i, z_j>. Rows of +-1 entries are bit
// packed so a dot product is a handful of XOR+popcount words; that is what
// makes the learner-count sweeps affordable.
class Gram {
 public:
  Gram(MatrixView z, std::span<const int> y) : z_(z), y_(y), n_(z.rows) {
    packed_ = true;
    for (std::size_t i = 0; i < z.rows && packed_; ++i) {
      for (double v : z.row(i)) {
        if (v != 1.0 && v != -1.0) {
          packed_ = false;
          break;
        }
      }
    }
    if (packed_) {
      words_ = (z.cols + 63) / 64;
      bits_.assign(n_ * words_, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        auto row = z.row(i);
        for (std::size_t c = 0; c < z.cols; ++c) {
          if (row[c] > 0.0) bits_[i * words_ + c / 64] |= std::uint64_t{1} << (c % 64);
        }
      }
    }

    diag_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) diag_[i] = kernel(i, i);

    if (n_ <= kDenseGramMaxRows) {
      full_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i) {
        full_[i * n_ + i] = diag_[i];
        for (std::size_t j = i + 1; j < n_; ++j) {
          const double q =
              static_cast<double>(y_[i] * y_[j]) * kernel(i, j);
          full_[i * n_ + j] = q;
          full_[j * n_ + i] = q;
        }
      }
    } else {
      scratch_i_.resize(n_);
      scratch_j_.resize(n_);
    }
  }

  bool cached() const { return !full_.empty(); }
  double qd(std::size_t i) const { return diag_[i]; }

  std::span<const double> row(std::size_t i) const { return {full_.data() + i * n_, n_}; }

  // On-demand rows for the uncached path; two scratch buffers suffice for
  // the pairwise update.
  std::span<const double> row_into(std::size_t i, bool second) const {
    auto& buf = second ? scratch_j_ : scratch_i_;
    for (std::size_t k = 0; k < n_; ++k) {
      buf[k] = static_cast<double>(y_[i] * y_[k]) * kernel(i, k);
    }
    return buf;
  }

 private:
  double kernel(std::size_t i, std::size_t j) const {
    if (packed_) {
      std::size_t mismatches = 0;
      const std::uint64_t* a = bits_.data() + i * words_;
      const std::uint64_t* b = bits_.data() + j * words_;
      for (std::size_t w = 0; w < words_; ++w) {
        mismatches += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
      }
      return static_cast<double>(z_.cols) - 2.0 * static_cast<double>(mismatches);
    }
    auto ri = z_.row(i);
    auto rj = z_.row(j);
    return std::inner_product(ri.begin(), ri.end(), rj.begin(), 0.0);
  }

  MatrixView z_;
  std::span<const int> y_;
  std::size_t n_;
  bool packed_ = false;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<double> diag_;
  std::vector<double> full_;
  mutable std::vector<double> scratch_i_;
  mutable std::vector<double> scratch_j_;
};

void check_inputs(MatrixView z, std::span<const int> y) {
  if (z.rows == 0 || z.cols == 0) throw std::invalid_argument("empty feature matrix");
  if (y.size() != z.rows) throw std::invalid_argument("label count does not match row count");
  bool has_pos = false, has_neg = false;
  for (int label : y) {
    if (label == +1) has_pos = true;
    else if (label == -1) has_neg = true;
    else throw std::invalid_argument("labels must be -1 or +1");
  }
  if (!has_pos || !has_neg) throw std::invalid_argument("both classes must be present");
}

double effective_c(const SvmModel& model) {
  return std::isfinite(model.c_value) ? model.c_value : kHardMarginC;
}

}  // namespace

SvmModel solve_soft_margin(MatrixView z, std::span<const int> y, double c, double tol,
                           std::uint64_t max_iter) {
  check_inputs(z, y);
  if (!(c > 0.0)) throw std::invalid_argument("C must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const std::size_t n = z.rows;
  Gram gram(z, y);

  std::vector<double> lambda(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 l'Ql - e'l at l = 0

  bool converged = false;
  std::uint64_t iterations = 0;

  while (iterations < max_iter) {
    // Maximal-KKT-violation pair: i from the "can increase" set, j from
    // the "can decrease" set.
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    std::size_t i = n, j = n;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = -static_cast<double>(y[k]) * grad[k];
      const bool in_up = y[k] > 0 ? lambda[k] < c : lambda[k] > 0.0;
      const bool in_low = y[k] > 0 ? lambda[k] > 0.0 : lambda[k] < c;
      if (in_up && v > m_up) {
        m_up = v;
        i = k;
      }
      if (in_low && v < m_low) {
        m_low = v;
        j = k;
      }
    }
    if (i == n || j == n || m_up - m_low <= tol) {
      converged = true;
      break;
    }
    ++iterations;

    auto q_i = gram.cached() ? gram.row(i) : gram.row_into(i, false);
    auto q_j = gram.cached() ? gram.row(j) : gram.row_into(j, true);

    const double old_i = lambda[i];
    const double old_j = lambda[j];

    if (y[i] != y[j]) {
      double quad = gram.qd(i) + gram.qd(j) + 2.0 * q_i[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = lambda[i] - lambda[j];
      lambda[i] += delta;
      lambda[j] += delta;
      if (diff > 0.0) {
        if (lambda[j] < 0.0) {
          lambda[j] = 0.0;
          lambda[i] = diff;
        }
      } else {
        if (lambda[i] < 0.0) {
          lambda[i] = 0.0;
          lambda[j] = -diff;
        }
      }
      if (diff > 0.0) {
        if (lambda[i] > c) {
          lambda[i] = c;
          lambda[j] = c - diff;
        }
      } else {
        if (lambda[j] > c) {
          lambda[j] = c;
          lambda[i] = c + diff;
        }
      }
    } else {
      double quad = gram.qd(i) + gram.qd(j) - 2.0 * q_i[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = lambda[i] + lambda[j];
      lambda[i] -= delta;
      lambda[j] += delta;
      if (sum > c) {
        if (lambda[i] > c) {
          lambda[i] = c;
          lambda[j] = sum - c;
        }
      } else {
        if (lambda[j] < 0.0) {
          lambda[j] = 0.0;
          lambda[i] = sum;
        }
      }
      if (sum > c) {
        if (lambda[j] > c) {
          lambda[j] = c;
          lambda[i] = sum - c;
        }
      } else {
        if (lambda[i] < 0.0) {
          lambda[i] = 0.0;
          lambda[j] = sum;
        }
      }
    }

    const double d_i = lambda[i] - old_i;
    const double d_j = lambda[j] - old_j;
    for (std::size_t k = 0; k < n; ++k) {
      grad[k] += q_i[k] * d_i + q_j[k] * d_j;
    }
  }

  SvmModel model;
  model.c_value = c;
  model.dual_vars = std::move(lambda);
  model.converged = converged;

  // beta = sum_i lambda_i y_i z_i
  model.beta.assign(z.cols, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double coef = model.dual_vars[i] * static_cast<double>(y[i]);
    if (coef == 0.0) continue;
    auto row = z.row(i);
    for (std::size_t t = 0; t < z.cols; ++t) model.beta[t] += coef * row[t];
  }

  // Bias from unbounded support vectors; otherwise the midpoint of the
  // feasible interval [max over up-set, min over low-set] of y_i - beta.z_i.
  std::vector<double> raw_scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = z.row(i);
    raw_scores[i] = std::inner_product(model.beta.begin(), model.beta.end(), row.begin(), 0.0);
  }
  double b_sum = 0.0;
  std::size_t b_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (model.dual_vars[i] > 0.0 && model.dual_vars[i] < c) {
      b_sum += static_cast<double>(y[i]) - raw_scores[i];
      ++b_count;
    }
  }
  if (b_count > 0) {
    model.bias = b_sum / static_cast<double>(b_count);
  } else {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double v = static_cast<double>(y[i]) - raw_scores[i];
      const bool in_up = y[i] > 0 ? model.dual_vars[i] < c : model.dual_vars[i] > 0.0;
      const bool in_low = y[i] > 0 ? model.dual_vars[i] > 0.0 : model.dual_vars[i] < c;
      if (in_up) lo = std::max(lo, v);
      if (in_low) hi = std::min(hi, v);
    }
    model.bias = (lo + hi) / 2.0;
  }

  model.slacks.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    model.slacks[i] =
        std::max(0.0, 1.0 - static_cast<double>(y[i]) * (raw_scores[i] + model.bias));
  }

  model.report = kkt_report(model, z, y);
  model.report.iterations = iterations;
  return model;
}

std::optional<SvmModel> solve_hard_margin(MatrixView z, std::span<const int> y, double tol,
                                          std::uint64_t max_iter) {
  SvmModel model = solve_soft_margin(z, y, kHardMarginC, tol, max_iter);
  const double max_slack = model.slacks.empty()
                               ? 0.0
                               : *std::max_element(model.slacks.begin(), model.slacks.end());
  if (max_slack > kHardMarginSlackTol) return std::nullopt;
  model.c_value = std::numeric_limits<double>::infinity();
  std::fill(model.slacks.begin(), model.slacks.end(), 0.0);
  return model;
}

double geometric_margin(const SvmModel& model) {
  double norm_sq = 0.0;
  for (double b : model.beta) norm_sq += b * b;
  if (norm_sq == 0.0) throw std::invalid_argument("geometric margin undefined for zero beta");
  return 1.0 / std::sqrt(norm_sq);
}

SolverReport kkt_report(const SvmModel& model, MatrixView z, std::span<const int> y) {
  check_inputs(z, y);
  if (model.beta.size() != z.cols) throw std::invalid_argument("beta length does not match matrix");
  if (model.dual_vars.size() != z.rows) {
    throw std::invalid_argument("dual variable count does not match matrix");
  }
  const double c = effective_c(model);
  const std::size_t n = z.rows;

  double norm_sq = 0.0;
  for (double b : model.beta) norm_sq += b * b;

  SolverReport report;
  double slack_sum = 0.0;
  double lambda_sum = 0.0;
  double max_violation = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = z.row(i);
    const double f =
        std::inner_product(model.beta.begin(), model.beta.end(), row.begin(), 0.0) + model.bias;
    const double yf = static_cast<double>(y[i]) * f;
    slack_sum += std::max(0.0, 1.0 - yf);
    lambda_sum += model.dual_vars[i];

    double violation;
    if (model.dual_vars[i] <= 0.0) {
      violation = std::max(0.0, 1.0 - yf);
    } else if (model.dual_vars[i] >= c) {
      violation = std::max(0.0, yf - 1.0);
    } else {
      violation = std::abs(yf - 1.0);
    }
    max_violation = std::max(max_violation, violation);
  }

  report.primal_objective = 0.5 * norm_sq + c * slack_sum;
  report.dual_objective = lambda_sum - 0.5 * norm_sq;
  report.duality_gap = report.primal_objective - report.dual_objective;
  report.max_kkt_violation = max_violation;
  report.iterations = model.report.iterations;
  return report;
}

int svm_predict(const SvmModel& model, std::span<const double> z) {
  if (z.size() != model.beta.size()) {
    throw std::invalid_argument("feature row length does not match the model");
  }
  const double score =
      std::inner_product(model.beta.begin(), model.beta.end(), z.begin(), 0.0) + model.bias;
  return sign_or_positive(score);
}

}  // namespace adasvm
