#pragma once

#include <stdexcept>
#include <string>

namespace mincut {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Construction-time violation of a Graph invariant.
class InvalidGraph : public Error {
 public:
  using Error::Error;
};

/// Empty or full side passed where a proper cut is required.
class InvalidCut : public Error {
 public:
  using Error::Error;
};

class InvalidPartition : public Error {
 public:
  using Error::Error;
};

/// An oracle was asked for an instance beyond its size limit.
class OracleCapacityError : public Error {
 public:
  using Error::Error;
};

/// A sampled subgraph came out disconnected; the caller should draw again.
class ResampleNeeded : public Error {
 public:
  using Error::Error;
};

/// Generator parameters that cannot produce a valid graph.
class InfeasibleSpec : public Error {
 public:
  using Error::Error;
};

/// An algorithm observed a state its own analysis rules out.
class InternalInvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace mincut
