#include "dpcd/svt.hpp"

#include <cmath>
#include <stdexcept>

namespace dpcd {

SparseVector::SparseVector(double rho, uint64_t cutoff, NoiseSource src)
    : epsilon_(0.0), cutoff_(cutoff), src_(src), threshold_noise_(0.0) {
  if (!(rho > 0)) throw std::invalid_argument("svt: rho must be positive");
  if (cutoff == 0) throw std::invalid_argument("svt: cutoff must be >= 1");
  epsilon_ = std::sqrt(2.0 * rho);
  threshold_noise_ = src_.laplace(2.0 / epsilon_);
}

SvtAnswer SparseVector::query(double value) {
  const double query_noise = src_.laplace(4.0 * double(cutoff_) / epsilon_);
  if (value + query_noise >= threshold_noise_ && above_ < cutoff_) {
    ++above_;
    return SvtAnswer::Above;
  }
  return SvtAnswer::Below;
}

double svt_accuracy_radius(uint64_t cutoff, double num_queries, double beta, double rho) {
  if (cutoff == 0) throw std::invalid_argument("svt radius: cutoff must be >= 1");
  if (!(num_queries >= 1)) throw std::invalid_argument("svt radius: need at least one query");
  if (!(beta > 0) || !(beta < 1)) throw std::invalid_argument("svt radius: beta must be in (0, 1)");
  if (!(rho > 0)) throw std::invalid_argument("svt radius: rho must be positive");
  const double c = double(cutoff);
  return 8.0 * c * (std::log(num_queries) + std::log(2.0 * c / beta)) / std::sqrt(2.0 * rho);
}

}  // namespace dpcd
