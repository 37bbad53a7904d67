#pragma once

#include <stdexcept>
#include <string>

namespace cbsheaf {

/// Raised for invalid input: malformed spaces, sheaves, expressions, files.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A map on quotients was requested for a map that does not respect the
/// relations. Seeing this on engine-built data means a broken naturality
/// square upstream.
class NotWellDefined : public Error {
 public:
  using Error::Error;
};

}  // namespace cbsheaf
