#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mgg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct MorphismError : Error {
  using Error::Error;
};

// A Q atom or a decomposition was asked of a graph that is not connected
// or has no edges.
struct ShapeError : Error {
  using Error::Error;
};

struct OperatorError : Error {
  using Error::Error;
};

struct MatchError : Error {
  using Error::Error;
};

struct BudgetError : Error {
  using Error::Error;
};

struct CompletionError : Error {
  using Error::Error;
};

struct InputError : Error {
  using Error::Error;
};

struct DanglingError : Error {
  DanglingError(std::string what, std::vector<std::pair<std::string, std::string>> e)
      : Error(std::move(what)), edges(std::move(e)) {}
  std::vector<std::pair<std::string, std::string>> edges;
};

}  // namespace mgg
