#include "lnlat/perm.hpp"

#include <algorithm>
#include <sstream>

namespace lnlat {

Perm::Perm(std::vector<std::uint16_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (auto x : img_) {
    if (x >= img_.size() || seen[x])
      throw input_error("Perm: image array is not a bijection");
    seen[x] = true;
  }
}

Perm Perm::identity(unsigned degree) {
  std::vector<std::uint16_t> img(degree);
  for (unsigned i = 0; i < degree; ++i) img[i] = static_cast<std::uint16_t>(i);
  return Perm(std::move(img));
}

Perm Perm::from_cycles(unsigned degree,
                       const std::vector<std::vector<std::uint16_t>>& cycles) {
  std::vector<std::uint16_t> img(degree);
  for (unsigned i = 0; i < degree; ++i) img[i] = static_cast<std::uint16_t>(i);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree) throw input_error("Perm::from_cycles: point out of range");
      img[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (unsigned i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<std::uint16_t> inv(img_.size());
  for (unsigned i = 0; i < degree(); ++i) inv[img_[i]] = static_cast<std::uint16_t>(i);
  Perm p;
  p.img_ = std::move(inv);
  return p;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree())
    throw input_error("Perm: degree mismatch in composition");
  std::vector<std::uint16_t> img(a.degree());
  for (unsigned i = 0; i < a.degree(); ++i) img[i] = a.img_[b.img_[i]];
  Perm p;
  p.img_ = std::move(img);
  return p;
}

Perm Perm::conjugated_by(const Perm& g) const {
  if (g.degree() != degree())
    throw input_error("Perm: degree mismatch in conjugation");
  std::vector<std::uint16_t> img(degree());
  for (unsigned i = 0; i < degree(); ++i) img[g.img_[i]] = g.img_[img_[i]];
  Perm p;
  p.img_ = std::move(img);
  return p;
}

bool Perm::commutes_with(const Perm& other) const {
  if (other.degree() != degree())
    throw input_error("Perm: degree mismatch");
  for (unsigned i = 0; i < degree(); ++i)
    if (img_[other.img_[i]] != other.img_[img_[i]]) return false;
  return true;
}

std::string Perm::to_string() const {
  std::ostringstream out;
  out << "[";
  for (unsigned i = 0; i < degree(); ++i) {
    if (i) out << " ";
    out << img_[i];
  }
  out << "]";
  return out.str();
}

}  // namespace lnlat
