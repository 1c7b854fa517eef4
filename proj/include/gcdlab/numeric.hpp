#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace gcdlab {

// Neumaier's variant of Kahan summation. Order-dependent but exactly
// reproducible for a fixed order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

/// Worker count used by the parallel loops. Reads GCDLAB_THREADS when no
/// explicit override has been set; falls back to hardware concurrency.
unsigned default_parallelism();
/// Sets the process-wide override (0 clears it); returns the previous one.
unsigned set_parallelism(unsigned workers);

/// Runs body(i) for i in [0, n) over a fixed pool of workers using a static
/// interleaved schedule. Callers that need reproducible results must write
/// into per-index slots and reduce afterwards in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned workers = 0);

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so shards can be evaluated in any order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))) {}

  std::uint64_t at(std::uint64_t counter) const {
    return mix(key_ + 0x9e3779b97f4a7c15ULL * (counter + 1));
  }
  std::uint64_t next() { return at(counter_++); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace gcdlab
