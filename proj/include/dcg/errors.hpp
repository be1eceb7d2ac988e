#pragma once

#include <stdexcept>
#include <string>

namespace dcg {

// Non-finite value encountered while iterating; carries the iteration index.
class divergence_error : public std::runtime_error {
 public:
  divergence_error(const std::string& what, int iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

class unsupported_loss_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class tuning_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class generation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dcg
