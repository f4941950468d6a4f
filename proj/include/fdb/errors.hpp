#pragma once

#include <stdexcept>
#include <string>

namespace fdb {

// Malformed or inconsistent input data (curve files, configs, parameters).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A modelling invariant broke during computation, e.g. LB > UB.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fdb
