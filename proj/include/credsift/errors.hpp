#pragma once

#include <stdexcept>
#include <string>

namespace credsift {

/// Input data violates a documented contract (malformed file, out-of-range
/// value, unknown id).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file or stream could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An external provider (sentiment service, translator) failed.
class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace credsift
