#include "gcdlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gcdlab {

struct WeightSequence::Cache {
  std::mutex mutex;
  std::vector<double> values;
};

double eta(double x) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("eta: argument must lie in (0,1)");
  return x < 0.5 ? 2.0 * x : x;
}

WeightSequence WeightSequence::explicit_list(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("weight list is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0 && values[i] < 1.0)) {
      throw std::invalid_argument("weight t_" + std::to_string(i + 1) + " = " +
                                  std::to_string(values[i]) + " is outside (0,1)");
    }
    if (i > 0 && values[i] > values[i - 1]) {
      throw std::invalid_argument("weights must be nonincreasing: t_" + std::to_string(i + 1) +
                                  " > t_" + std::to_string(i));
    }
  }
  WeightSequence w;
  w.values_ = std::move(values);
  return w;
}

WeightSequence WeightSequence::power_law(double alpha, const PrimeTable& table) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("power-law exponent alpha must lie in (0,1]");
  }
  WeightSequence w;
  w.alpha_ = alpha;
  w.table_ = &table;
  w.cache_ = std::make_shared<Cache>();
  return w;
}

double WeightSequence::operator()(std::size_t j) const {
  if (j == 0) throw std::out_of_range("weight positions are 1-based");
  if (!alpha_) {
    if (j > values_.size()) {
      throw std::out_of_range("weight t_" + std::to_string(j) + " requested from a list of " +
                              std::to_string(values_.size()));
    }
    return values_[j - 1];
  }
  std::lock_guard lock(cache_->mutex);
  auto& cached = cache_->values;
  while (cached.size() < j) {
    const double p = static_cast<double>(table_->prime(cached.size() + 1));
    double v = std::pow(p, -*alpha_);
    if (eta_applied_) v = gcdlab::eta(v);
    cached.push_back(v);
  }
  return cached[j - 1];
}

double WeightSequence::value_or_zero(std::size_t j) const {
  if (!alpha_ && j > values_.size()) return 0.0;
  return (*this)(j);
}

std::optional<std::size_t> WeightSequence::length() const {
  if (alpha_) return std::nullopt;
  return values_.size();
}

std::vector<double> WeightSequence::prefix(std::size_t n) const {
  std::vector<double> out(n);
  for (std::size_t j = 1; j <= n; ++j) out[j - 1] = (*this)(j);
  return out;
}

bool WeightSequence::is_decreasing(std::size_t n) const {
  for (std::size_t j = 2; j <= n; ++j) {
    if ((*this)(j) > (*this)(j - 1)) return false;
  }
  return true;
}

WeightSequence WeightSequence::eta() const {
  WeightSequence w = *this;
  w.eta_applied_ = true;
  if (alpha_) {
    w.cache_ = std::make_shared<Cache>();
  } else {
    for (double& v : w.values_) v = gcdlab::eta(v);
  }
  return w;
}

WeightSequence::Rearrangement WeightSequence::rearranged(std::size_t min_length) const {
  std::size_t n = std::max<std::size_t>(min_length, 1);
  if (!alpha_) {
    n = values_.size();
  } else {
    // Past the prefix every entry is bounded by 2 p_j^{-alpha}, which
    // decreases in j, so it suffices that this bound for j = n+1 does not
    // exceed the prefix minimum.
    for (;;) {
      const auto pre = prefix(n);
      const double min_pre = *std::min_element(pre.begin(), pre.end());
      const double next_bound =
          (eta_applied_ ? 2.0 : 1.0) * std::pow(static_cast<double>(table_->prime(n + 1)), -*alpha_);
      if (next_bound <= min_pre) break;
      ++n;
    }
  }
  Rearrangement r{*this, std::vector<std::size_t>(n), true};
  const auto pre = prefix(n);
  std::iota(r.permutation.begin(), r.permutation.end(), std::size_t{1});
  std::stable_sort(r.permutation.begin(), r.permutation.end(),
                   [&](std::size_t a, std::size_t b) { return pre[a - 1] > pre[b - 1]; });
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) {
    sorted[i] = pre[r.permutation[i] - 1];
    if (r.permutation[i] != i + 1) r.was_sorted = false;
  }
  WeightSequence w;
  w.values_ = std::move(sorted);
  w.eta_applied_ = eta_applied_;
  r.sorted = std::move(w);
  return r;
}

std::string WeightSequence::describe() const {
  std::ostringstream os;
  if (alpha_) {
    os << "power_law(alpha=" << *alpha_ << ")";
  } else {
    os << "list[" << values_.size() << "]";
  }
  if (eta_applied_) os << " with eta";
  return os.str();
}

WeightSequence eta(const WeightSequence& t) { return t.eta(); }

WeightSequence power_law(double alpha) { return WeightSequence::power_law(alpha); }

std::size_t kappa(const WeightSequence& t) {
  if (auto len = t.length()) {
    std::size_t k = 0;
    for (std::size_t j = 1; j <= *len; ++j) {
      if (t(j) >= 0.5) k = j;
    }
    return k;
  }
  // Power law: t_j <= 2 p_j^{-alpha} < 1/2 once p_j > 4^{1/alpha}.
  const double cutoff = std::pow(t.eta_applied() ? 4.0 : 2.0, 1.0 / *t.alpha());
  std::size_t k = 0;
  for (std::size_t j = 1;; ++j) {
    if (static_cast<double>(PrimeTable::standard().prime(j)) > cutoff) break;
    if (t(j) >= 0.5) k = j;
  }
  return k;
}

double weight_power(const WeightSequence& t, const MultiIndex& beta) {
  double w = 1.0;
  for (const auto& [pos, exp] : beta.entries()) {
    const double tj = t(pos);
    w *= exp == 1 ? tj : std::pow(tj, static_cast<double>(exp));
  }
  return w;
}

}  // namespace gcdlab
