#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace envc {

/// Dense symmetric matrix stored fully, sized for the small normal-equation
/// systems of the smoothers (tens of unknowns).
class SymMatrix {
 public:
  explicit SymMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0.0) {}

  int size() const { return n_; }
  double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

  void add_sym(int i, int j, double v) {
    at(i, j) += v;
    if (i != j) at(j, i) += v;
  }

 private:
  int n_;
  std::vector<double> data_;
};

/// Accumulates xtx += row row^T (full), xty += row * y.
void accumulate_normal_eq(SymMatrix& xtx, std::vector<double>& xty,
                          const std::vector<double>& row, double y);

/// Solves (xtx + lambda * penalty) beta = xty by Cholesky; a null penalty
/// means the identity.
std::vector<double> solve_penalized(const SymMatrix& xtx, const std::vector<double>& xty,
                                    double lambda, const SymMatrix* penalty = nullptr);

/// Same solve plus the effective degrees of freedom
/// tr((XtX + lambda P)^-1 XtX), as needed by generalised cross-validation.
struct PenalizedFit {
  std::vector<double> beta;
  double edf = 0.0;
};
PenalizedFit solve_penalized_with_edf(const SymMatrix& xtx, const std::vector<double>& xty,
                                      double lambda, const SymMatrix* penalty = nullptr);

}  // namespace envc
