#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace casq {

// 32-point Gauss-Legendre rule on [-1, 1]; nodes found by Newton iteration
// on the Legendre polynomial (deterministic, computed once).
struct GaussLegendre32 {
  std::array<double, 32> x{};
  std::array<double, 32> w{};

  GaussLegendre32() {
    constexpr int n = 32;
    for (int i = 0; i < n / 2; ++i) {
      double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double p0 = 0.0, p1 = 0.0;
      for (int it = 0; it < 100; ++it) {
        p0 = 1.0;
        p1 = 0.0;
        for (int j = 0; j < n; ++j) {  // recurrence for P_n(t)
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
        }
        const double dp = n * (t * p0 - p1) / (t * t - 1.0);
        const double step = p0 / dp;
        t -= step;
        if (std::abs(step) < 1e-15) break;
      }
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      const double dp = n * (t * p0 - p1) / (t * t - 1.0);
      x[i] = -t;
      x[n - 1 - i] = t;
      w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

inline const GaussLegendre32& gl32() {
  static const GaussLegendre32 rule;
  return rule;
}

// composite Gauss-Legendre on [a, b]
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 8) {
  const auto& rule = gl32();
  double sum = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double acc = 0.0;
    for (int i = 0; i < 32; ++i) acc += rule.w[i] * f(mid + 0.5 * h * rule.x[i]);
    sum += 0.5 * h * acc;
  }
  return sum;
}

}  // namespace casq
