#include "envc/linalg.hpp"

#include <cmath>

namespace envc {

void accumulate_normal_eq(SymMatrix& xtx, std::vector<double>& xty,
                          const std::vector<double>& row, double y) {
  const int n = xtx.size();
  for (int i = 0; i < n; ++i) {
    const double ri = row[i];
    if (ri == 0.0) continue;
    xty[i] += ri * y;
    for (int j = 0; j <= i; ++j) {
      if (row[j] != 0.0) xtx.add_sym(i, j, ri * row[j]);
    }
  }
}

namespace {

SymMatrix cholesky(const SymMatrix& xtx, double lambda, const SymMatrix* penalty) {
  const int n = xtx.size();
  SymMatrix L(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = xtx.at(i, j) + lambda * (penalty ? penalty->at(i, j) : (i == j ? 1.0 : 0.0));
      for (int k = 0; k < j; ++k) s -= L.at(i, k) * L.at(j, k);
      if (i == j) {
        if (s <= 0.0) throw std::runtime_error("linalg: matrix not positive definite");
        L.at(i, i) = std::sqrt(s);
      } else {
        L.at(i, j) = s / L.at(j, j);
      }
    }
  }
  return L;
}

std::vector<double> solve_with_factor(const SymMatrix& L, std::vector<double> b) {
  const int n = L.size();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) b[i] -= L.at(i, k) * b[k];
    b[i] /= L.at(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) b[i] -= L.at(k, i) * b[k];
    b[i] /= L.at(i, i);
  }
  return b;
}

}  // namespace

std::vector<double> solve_penalized(const SymMatrix& xtx, const std::vector<double>& xty,
                                    double lambda, const SymMatrix* penalty) {
  return solve_with_factor(cholesky(xtx, lambda, penalty), xty);
}

PenalizedFit solve_penalized_with_edf(const SymMatrix& xtx, const std::vector<double>& xty,
                                      double lambda, const SymMatrix* penalty) {
  const int n = xtx.size();
  const SymMatrix L = cholesky(xtx, lambda, penalty);
  PenalizedFit fit;
  fit.beta = solve_with_factor(L, xty);
  for (int j = 0; j < n; ++j) {
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = xtx.at(i, j);
    const std::vector<double> v = solve_with_factor(L, std::move(col));
    fit.edf += v[static_cast<std::size_t>(j)];
  }
  return fit;
}

}  // namespace envc
