#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bellhom {

/// Dimensionless coherent displacement amplitude (rescaled by sqrt((1-T)/T)).
using Amplitude = std::complex<double>;

inline double mag2(const Amplitude& z) { return std::norm(z); }

/// Thrown when a Fock-space computation cannot reach the requested accuracy
/// at the given truncation dimension.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int suggested_dim)
      : std::runtime_error(what), suggested_dim(suggested_dim) {}
  int suggested_dim;
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace bellhom
