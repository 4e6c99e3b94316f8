// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dieres {

// Argument outside the mathematical domain of an operation (x = 0 for a
// radiating field, |x| > 1 for an eigenmode, complex omega for cross sections).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Evaluation exactly at (or numerically indistinguishable from) a pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Index out of the admissible range, e.g. |m| > n.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Outside the quasi-static regime |delta * omega| < pi.
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class Family { TE, TM };

inline const char* to_string(Family f) { return f == Family::TE ? "TE" : "TM"; }

// A Mie denominator vanished: omega is numerically a scattering resonance.
class ResonanceError : public std::runtime_error {
 public:
  ResonanceError(int n, Family family, const std::string& what)
      : std::runtime_error(what), n_(n), family_(family) {}
  int n() const { return n_; }
  Family family() const { return family_; }

 private:
  int n_;
  Family family_;
};

class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(std::complex<double> last, const std::string& what)
      : std::runtime_error(what), last_(last) {}
  std::complex<double> last_iterate() const { return last_; }

 private:
  std::complex<double> last_;
};

// Requested multipole moment absent from the collection handed to an assembler.
class MissingMoment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dieres
