#pragma once

// Diagonal expansive dilation matrices M = diag(lambda_1..lambda_d),
// |lambda_i| > 1. Powers, determinants, and inverse-power operator norms are
// closed-form for the diagonal case.

#include "qproj/common.hpp"

namespace qproj {

class DilationMatrix {
 public:
  explicit DilationMatrix(vecd diag) : diag_(std::move(diag)) {
    require(!diag_.empty(), "DilationMatrix: empty diagonal");
    for (double v : diag_)
      require(std::abs(v) > 1.0 + 1e-12, "DilationMatrix: entries must satisfy |lambda| > 1");
  }

  int dim() const { return static_cast<int>(diag_.size()); }
  const vecd& diag() const { return diag_; }

  /// |det M|^j = prod |lambda_i|^j, any integer j.
  double det_abs_power(int j) const {
    double m = 1.0;
    for (double v : diag_) m *= std::pow(std::abs(v), j);
    return m;
  }
  double det_abs() const { return det_abs_power(1); }

  /// Per-axis entries of M^j (signed), any integer j.
  vecd power(int j) const {
    vecd r(diag_.size());
    for (std::size_t i = 0; i < diag_.size(); ++i) r[i] = std::pow(diag_[i], j);
    return r;
  }

  /// M^j x componentwise.
  vecd apply(int j, const vecd& x) const {
    require(x.size() == diag_.size(), "DilationMatrix::apply: dimension mismatch");
    vecd r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::pow(diag_[i], j) * x[i];
    return r;
  }

  /// Spectral norm of M^{-j}; for diagonal M this is max_i |lambda_i|^{-j}.
  double op_norm_inverse_power(int j) const {
    double n = 0.0;
    for (double v : diag_) n = std::max(n, std::pow(std::abs(v), -j));
    return n;
  }

  /// Smallest |lambda_i|: the expansion factor governing decay rates.
  double theta() const {
    double t = std::abs(diag_[0]);
    for (double v : diag_) t = std::min(t, std::abs(v));
    return t;
  }

  bool is_isotropic() const {
    for (double v : diag_)
      if (std::abs(std::abs(v) - std::abs(diag_[0])) > 1e-14) return false;
    return true;
  }

 private:
  vecd diag_;
};

}  // namespace qproj
