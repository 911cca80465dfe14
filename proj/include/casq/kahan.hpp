#pragma once

// Compensated (Kahan) summation. Fixed chunking plus in-order combination
// makes parallel reductions bitwise identical to the sequential result.

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace casq {

class KahanSum {
 public:
  KahanSum& operator+=(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
    return *this;
  }

  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// Sums f(i) for i in [0, n) with a fixed chunk size; the per-chunk partials
// are combined in index order, so the result does not depend on the number
// of worker threads.
inline double deterministic_sum(std::size_t n, unsigned threads,
                                const std::function<double(std::size_t)>& f) {
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  auto run_chunk = [&](std::size_t c) {
    KahanSum acc;
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(n, begin + kChunk);
    for (std::size_t i = begin; i < end; ++i) acc += f(i);
    partial[c] = acc.value();
  };
  if (threads <= 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    const unsigned nw = std::min<unsigned>(threads, static_cast<unsigned>(chunks));
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += nw) run_chunk(c);
      });
    for (auto& t : pool) t.join();
  }
  KahanSum total;
  for (double p : partial) total += p;
  return total.value();
}

}  // namespace casq
