#ifndef LNLAT_ERRORS_HPP
#define LNLAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lnlat {

// Malformed or inconsistent input (degree mismatch, element outside group, ...).
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation exceeded its configured budget.  `achieved` carries how far
// the enumeration got before giving up.
class resource_error : public std::runtime_error {
public:
  resource_error(const std::string& what, std::size_t achieved)
      : std::runtime_error(what), achieved(achieved) {}
  std::size_t achieved;
};

// Two routes that are provably equal disagreed; indicates a bug.
class internal_error : public std::logic_error {
public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// An identity that holds in the limit failed at finite depth.  Carries a
// printable witness so callers can report which levels broke.
class truncation_artefact_error : public std::runtime_error {
public:
  explicit truncation_artefact_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace lnlat

#endif
