#include "envc/periodic.hpp"

#include <cmath>

#include "envc/linalg.hpp"

namespace envc {

PeriodicFourier fit_fourier(const std::vector<double>& phases,
                            const std::vector<double>& values, int order,
                            bool log_domain) {
  if (phases.size() != values.size() || phases.empty()) {
    throw std::invalid_argument("fit_fourier: bad inputs");
  }
  const int p = 1 + 2 * order;
  SymMatrix xtx(p);
  std::vector<double> xty(p, 0.0);
  std::vector<double> row(p);
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const double w = kTwoPi * phases[i];
    row[0] = 1.0;
    for (int j = 1; j <= order; ++j) {
      row[2 * j - 1] = std::cos(w * j);
      row[2 * j] = std::sin(w * j);
    }
    const double y = log_domain ? std::log(values[i]) : values[i];
    accumulate_normal_eq(xtx, xty, row, y);
  }
  const std::vector<double> beta = solve_penalized(xtx, xty, 0.0);
  PeriodicFourier f;
  f.log_domain = log_domain;
  f.a0 = beta[0];
  f.a.resize(order);
  f.b.resize(order);
  for (int j = 1; j <= order; ++j) {
    f.a[j - 1] = beta[2 * j - 1];
    f.b[j - 1] = beta[2 * j];
  }
  return f;
}

}  // namespace envc
