#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mopfact {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroDivisor : public Error {
 public:
  ZeroDivisor() : Error("division by zero") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Series division by c*t attempted on a series whose constant term is nonzero.
class NonzeroConstantTerm : public Error {
 public:
  NonzeroConstantTerm() : Error("series has a nonzero constant term; cannot divide by t") {}
};

/// A coefficient beyond the tracked order of a truncated series was requested.
class InsufficientOrder : public Error {
 public:
  InsufficientOrder(std::ptrdiff_t wanted, std::ptrdiff_t order)
      : Error("coefficient t^" + std::to_string(wanted) + " requested from a series known only to order " +
              std::to_string(order)),
        wanted_(wanted),
        order_(order) {}
  std::ptrdiff_t wanted() const noexcept { return wanted_; }
  std::ptrdiff_t order() const noexcept { return order_; }

 private:
  std::ptrdiff_t wanted_;
  std::ptrdiff_t order_;
};

class MomentTableExhausted : public Error {
 public:
  MomentTableExhausted(std::size_t functional, std::size_t n)
      : Error("moment table of functional " + std::to_string(functional) + " has no entry for x^" +
              std::to_string(n)),
        functional_(functional),
        n_(n) {}
  std::size_t functional() const noexcept { return functional_; }
  std::size_t order() const noexcept { return n_; }

 private:
  std::size_t functional_;
  std::size_t n_;
};

class InvalidSystem : public Error {
 public:
  using Error::Error;
};

/// Leading principal minor Delta_{n+1} of the moment matrix of V^[j] vanishes.
class SingularLeadingMinor : public Error {
 public:
  SingularLeadingMinor(std::size_t j, std::size_t n)
      : Error("moment matrix of V^[" + std::to_string(j) + "] has a zero pivot at n=" + std::to_string(n) +
              " (leading minor of order " + std::to_string(n + 1) + " vanishes)"),
        j_(j),
        n_(n) {}
  std::size_t system() const noexcept { return j_; }
  std::size_t pivot() const noexcept { return n_; }

 private:
  std::size_t j_;
  std::size_t n_;
};

/// alpha_index vanished: the recurrence matrix has no bidiagonal factorisation.
class NoBidiagonalFactorisation : public Error {
 public:
  explicit NoBidiagonalFactorisation(std::size_t index, const std::string& detail = {})
      : Error("no bidiagonal factorisation: alpha_" + std::to_string(index) + " = 0" +
              (detail.empty() ? std::string{} : " (" + detail + ")")),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Two provably equal expressions disagreed. Always a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class AlphaIndexOutOfRange : public Error {
 public:
  AlphaIndexOutOfRange(std::size_t index, std::size_t available)
      : Error("alpha_" + std::to_string(index) + " required but only " + std::to_string(available) +
              " coefficients are available"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

}  // namespace mopfact
