#pragma once

#include <stdexcept>
#include <string>

namespace hetopt {

// Invalid configuration values or scenario geometry that cannot be generated.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The scenario admits no feasible solution, e.g. a UE whose every candidate
// eNB offers zero rate.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hetopt
