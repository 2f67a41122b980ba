#include "dpcd/mechanism.hpp"

#include <stdexcept>

namespace dpcd {

void Mechanism::check_capacity() const {
  if (time() >= horizon()) throw std::out_of_range("mechanism: stepped past horizon");
}

std::vector<double> run_mechanism(Mechanism& m, const Stream& x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto& e : x.entries()) out.push_back(m.step(e));
  return out;
}

ExactOracleMechanism::ExactOracleMechanism(size_t horizon) : horizon_(horizon) {
  if (horizon == 0) throw std::invalid_argument("mechanism: horizon must be >= 1");
}

double ExactOracleMechanism::step(const StreamEntry& e) {
  check_capacity();
  tracker_.apply(e);
  return double(tracker_.distinct_count());
}

}  // namespace dpcd
