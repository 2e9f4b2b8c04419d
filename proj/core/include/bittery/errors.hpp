#pragma once

#include <stdexcept>
#include <string>

namespace bittery {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidSpec : Error {
  using Error::Error;
};
struct EmptyShell : Error {
  using Error::Error;
};
struct IncommensurateEnergy : Error {
  using Error::Error;
};
struct TraceMismatch : Error {
  using Error::Error;
};
struct DegenerateState : Error {
  using Error::Error;
};
struct InvalidRange : Error {
  using Error::Error;
};
struct UnsupportedRange : Error {
  using Error::Error;
};
struct OffGrid : Error {
  using Error::Error;
};
struct InvalidSchedule : Error {
  using Error::Error;
};
struct DimensionCap : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace bittery
