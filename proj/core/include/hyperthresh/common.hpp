#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperthresh {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Sorted, duplicate-free list of vertex indices.
using Edge = std::vector<Vertex>;
using VertexSet = std::vector<Vertex>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad files, unknown vertices, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Hard budget overrun in an operation that cannot return a partial answer.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Requested parameters cannot satisfy the constraints of the construction.
class InfeasibleParameters : public Error {
 public:
  using Error::Error;
};

/// Node counter shared by the exact search routines.
class Budget {
 public:
  static constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

  explicit Budget(std::uint64_t limit = kUnlimited) : limit_(limit) {}

  /// Counts one search node; false once the limit has been reached.
  bool tick() {
    if (used_ >= limit_) {
      exhausted_ = true;
      return false;
    }
    ++used_;
    return true;
  }

  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }
  bool exhausted() const { return exhausted_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  bool exhausted_ = false;
};

/// Default node budget; the UNIFOLIATE_BUDGET environment variable overrides it.
std::uint64_t default_budget();

enum class SearchStatus { complete, budget_exhausted };

/// Outcome of a budgeted existence search. `value` is set when a witness was
/// found; an empty value with status complete means "provably none".
template <class T>
struct Search {
  SearchStatus status = SearchStatus::complete;
  std::optional<T> value;
  std::uint64_t nodes = 0;

  bool found() const { return value.has_value(); }
  bool exhausted() const { return status == SearchStatus::budget_exhausted; }
};

}  // namespace hyperthresh
