#pragma once

#include <stdexcept>
#include <string>

namespace entkit {

// Failure taxonomy. The CLI maps these onto process exit codes:
// argument/geometry -> 2, resource -> 3, numerical -> 4.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad parameter values: out-of-range orders, malformed specs, invalid config.
class argument_error : public error {
public:
  using error::error;
};

// Interval arrangements that an operation cannot accept. The kind
// distinguishes, e.g., touching closures from genuine overlap, since
// callers may want to recover differently.
class geometry_error : public error {
public:
  enum class kind {
    overlapping,
    touching,
    unordered,
    nonpositive,
    contained,
    unbounded,
    empty,
  };

  geometry_error(kind k, const std::string& msg) : error(msg), k_(k) {}
  kind which() const { return k_; }

private:
  kind k_;
};

// Work-limit violations (node caps and the like).
class resource_error : public error {
public:
  using error::error;
};

// Iteration failures, out-of-tolerance residuals, divergent integrals.
class numerical_error : public error {
public:
  using error::error;
};

}  // namespace entkit
