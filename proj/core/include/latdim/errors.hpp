#pragma once

#include <stdexcept>
#include <string>

namespace latdim {

// Every failure raised by the library derives from Error. The subclasses are
// the named error kinds of the public contract; callers that only care about
// input-vs-computation failures can catch InputError / ComputeError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ComputeError : public Error {
 public:
  using Error::Error;
};

class InvalidMatrix : public InputError {
 public:
  using InputError::InputError;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class OutOfRange : public InputError {
 public:
  using InputError::InputError;
};

class IndexError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidDirection : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class RankDeficient : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

class EmptySpectrum : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

class NoiseEstimateDiverged : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

class DegenerateSamples : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

class OptimizerDiverged : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

class TooManyDegenerate : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

}  // namespace latdim
