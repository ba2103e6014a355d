#pragma once

#include <stdexcept>
#include <string>

namespace swj {

// Stable error codes; mirrored in the C API header (swj_status).
enum class Errc : int {
  Ok = 0,
  NotSymmetric = 1,
  ImNotPositiveDefinite = 2,
  ReNotPositiveDefinite = 3,
  ShapeMismatch = 4,
  SingularJ = 5,
  DomainViolation = 6,
  EvenM = 7,
  NonIntegralParams = 8,
  OddDiagonalB = 9,
  NonUnimodularM = 10,
  RadiusCapExceeded = 11,
  ThetaNearZero = 12,
  GridTooCoarse = 13,
  SheetMismatch = 14,
  NotSymplectic = 15,
  SingularOmega = 16,
  InvalidArgument = 17,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace swj
