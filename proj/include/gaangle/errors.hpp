#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace gaangle {

// Short %g rendering for messages; std::to_string rounds small values to 0.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SignatureMismatch : public Error {
 public:
  SignatureMismatch() : Error("operands have different signatures") {}
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class GradeMismatch : public Error {
 public:
  using Error::Error;
};

// <x reverse(x)>_0 came out negative, so |x| is not a real number.
class NegativeSquare : public Error {
 public:
  explicit NegativeSquare(double square)
      : Error("negative squared norm " + format_number(square)) {}
};

// Spanning vectors are linearly dependent (or a blade is zero).
class DegenerateSpan : public Error {
 public:
  using Error::Error;
};

class NotABlade : public Error {
 public:
  using Error::Error;
};

class NonEuclidean : public Error {
 public:
  using Error::Error;
};

// A grade-part norm or a principal tangent sits too close to the zero
// threshold to decide the intersection/perpendicularity dimensions.
class AmbiguousRank : public Error {
 public:
  using Error::Error;
};

// A conformal object whose Euclidean carrier is empty.
class NoDirection : public Error {
 public:
  using Error::Error;
};

}  // namespace gaangle
