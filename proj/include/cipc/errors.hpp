#ifndef CIPC_ERRORS_HPP
#define CIPC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cipc {

// Thrown when an iterative routine runs out of depth/iterations. Carries the
// best estimate computed so far, so callers can decide whether to use it.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best)
      : std::runtime_error(what), best_estimate_(best) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace cipc

#endif  // CIPC_ERRORS_HPP
