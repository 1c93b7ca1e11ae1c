#ifndef LNLAT_PERM_HPP
#define LNLAT_PERM_HPP

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "lnlat/errors.hpp"

namespace lnlat {

/// A bijection on {0..degree-1}, stored as the image array: img[p] is the
/// image of point p.
class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<std::uint16_t> images);
  Perm(std::initializer_list<std::uint16_t> images)
      : Perm(std::vector<std::uint16_t>(images)) {}

  static Perm identity(unsigned degree);
  /// Builds the permutation from disjoint cycles, e.g. {{0,1},{2,3,4}}.
  static Perm from_cycles(unsigned degree,
                          const std::vector<std::vector<std::uint16_t>>& cycles);

  unsigned degree() const { return static_cast<unsigned>(img_.size()); }
  std::uint16_t operator[](std::uint16_t p) const { return img_[p]; }
  const std::vector<std::uint16_t>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;

  /// (a * b)(p) = a(b(p)): apply b first, then a.
  friend Perm operator*(const Perm& a, const Perm& b);

  /// x^g = g x g^{-1}.
  Perm conjugated_by(const Perm& g) const;

  bool commutes_with(const Perm& other) const;

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Perm& a, const Perm& b) { return a.img_ != b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

  std::string to_string() const;

private:
  std::vector<std::uint16_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace lnlat

#endif
