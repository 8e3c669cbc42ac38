// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_ERROR_H_
#define VOXRESTORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace voxrestore {

// Every failure surfaced by the library is a voxrestore::Error; the CLI turns
// it into a nonzero exit status with the message on stderr.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace voxrestore

#endif  // VOXRESTORE_ERROR_H_
