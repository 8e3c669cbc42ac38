// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_FILE_UTIL_H_
#define VOXRESTORE_FILE_UTIL_H_

#include <filesystem>
#include <string_view>

namespace voxrestore {

// Writes `bytes` to `path.partial` and renames it over `path`, so readers see
// either the old file or the complete new one. Throws if the parent directory
// is missing or any step fails; the temporary file is removed on failure.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace voxrestore

#endif  // VOXRESTORE_FILE_UTIL_H_
