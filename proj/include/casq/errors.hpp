#pragma once

#include <stdexcept>
#include <string>

namespace casq {

// Base class for all numeric-domain failures raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NonDiagonalizable : public Error {
 public:
  NonDiagonalizable(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class BranchCutEigenvalue : public Error {
 public:
  using Error::Error;
};

class LogOfSingular : public Error {
 public:
  using Error::Error;
};

class InvalidMode : public Error {
 public:
  using Error::Error;
};

class ZeroChi : public Error {
 public:
  using Error::Error;
};

class ArtanhPole : public Error {
 public:
  using Error::Error;
};

class MasslessSpinor : public Error {
 public:
  using Error::Error;
};

class DecompositionFailure : public Error {
 public:
  DecompositionFailure(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class SingularRho : public Error {
 public:
  using Error::Error;
};

class PoleAtOne : public Error {
 public:
  using Error::Error;
};

class InvalidA : public Error {
 public:
  using Error::Error;
};

class OrderTooLarge : public Error {
 public:
  using Error::Error;
};

class PoleAtNonPositiveInteger : public Error {
 public:
  using Error::Error;
};

class PoleDetected : public Error {
 public:
  PoleDetected(const std::string& what, double location)
      : Error(what + " (at " + std::to_string(location) + ")"), location_(location) {}
  double location() const { return location_; }

 private:
  double location_;
};

class TailEstimateFailure : public Error {
 public:
  using Error::Error;
};

class ExtrapolationUnstable : public Error {
 public:
  using Error::Error;
};

class NonConvergent : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace casq
