#pragma once

#include <stdexcept>
#include <string>

namespace privgraph {

// Out-of-domain inputs throw std::invalid_argument directly. The types below
// cover conditions that deserve their own catch clause or carry a payload.

// Requested computation exceeds a hard size guard.
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or infeasible configuration (budget splits, thresholds, ...).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative routine hit its cap; carries the best estimate so far.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double best)
      : std::runtime_error(what), best_estimate(best) {}
  double best_estimate;
};

// Text input that failed to parse; line numbers are 1-based.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, int line_no)
      : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"),
        line(line_no) {}
  int line;
};

// A checked internal invariant failed: a bug, not bad input.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace privgraph
