#pragma once

#include <stdexcept>
#include <string>

namespace photometrix {

// Base for every error raised by the library. Callers that only care about
// "something was wrong with the inputs" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Poisson pmf tail beyond the requested cutoff is too heavy.
class CutoffTooSmall : public Error {
 public:
  CutoffTooSmall(double tail_mass, int k_max)
      : Error("poisson tail mass " + std::to_string(tail_mass) + " beyond k_max=" +
              std::to_string(k_max) + " exceeds 1e-9"),
        tail_mass_(tail_mass) {}
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  double tail_mass_;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NotAState : public Error {
 public:
  using Error::Error;
};

// The loss upper bound diverges for a lossless channel.
class MuZero : public Error {
 public:
  MuZero() : Error("upper bound diverges for mu = 0") {}
};

class InvalidFractions : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class NoCrossing : public Error {
 public:
  using Error::Error;
};

class ODEFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace photometrix
