#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace charp {

using Rational = boost::rational<std::int64_t>;

// Numeric values double as C API status codes and (mostly) CLI exit codes.
enum class ErrorCode : int {
  input = 1,
  theorem_violation = 2,
  budget = 3,
  size_guard = 4,
  not_cofinite = 5,
  internal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::input, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorCode::input, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorCode::budget, what) {}
};

class SizeGuardExceeded : public Error {
 public:
  explicit SizeGuardExceeded(const std::string& what) : Error(ErrorCode::size_guard, what) {}
};

class NotCofinite : public Error {
 public:
  explicit NotCofinite(const std::string& what) : Error(ErrorCode::not_cofinite, what) {}
};

class TheoremViolation : public Error {
 public:
  explicit TheoremViolation(const std::string& what)
      : Error(ErrorCode::theorem_violation, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCode::internal, what) {}
};

/// Process-wide resource limits. Every Groebner computation reads the pair
/// budget when it starts; the other limits are read at the call sites that
/// enforce them.
struct Limits {
  std::atomic<std::uint64_t> pair_budget{1'000'000};
  std::atomic<std::size_t> max_generators{4096};
  std::atomic<int> layer_bound{64};
  std::atomic<int> jobs{1};
};

Limits& limits();

}  // namespace charp
