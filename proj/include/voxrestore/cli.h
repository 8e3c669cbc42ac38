// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_CLI_H_
#define VOXRESTORE_CLI_H_

namespace voxrestore {

// Entry point of the `voxrestore` tool. Machine-readable output goes to
// stdout, logs and summaries to stderr. Returns the process exit status.
int RunCli(int argc, char** argv);

}  // namespace voxrestore

#endif  // VOXRESTORE_CLI_H_
