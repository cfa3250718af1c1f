#pragma once

#include <stdexcept>
#include <vector>

#include "nctlab/weyl.hpp"

namespace nct {

/// Element of S(R) (x) C^p: p wave packets, component k holding the fiber of
/// residue class [k] = k mod p, k = 0..p-1.
class FiberVector {
 public:
  explicit FiberVector(std::vector<GaussPacket> components) : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("fiber vector needs p >= 1 components");
  }

  static FiberVector zero(int p) {
    if (p < 1) throw std::invalid_argument("fiber vector needs p >= 1");
    return FiberVector(std::vector<GaussPacket>(static_cast<std::size_t>(p)));
  }

  int p() const { return static_cast<int>(components_.size()); }
  const GaussPacket& operator[](int k) const { return components_.at(static_cast<std::size_t>(k)); }
  GaussPacket& operator[](int k) { return components_.at(static_cast<std::size_t>(k)); }
  const std::vector<GaussPacket>& components() const { return components_; }

  /// Component of class [n], any integer n.
  const GaussPacket& fiber(long n) const {
    const long p = static_cast<long>(components_.size());
    return components_[static_cast<std::size_t>(((n % p) + p) % p)];
  }

 private:
  std::vector<GaussPacket> components_;
};

}  // namespace nct
