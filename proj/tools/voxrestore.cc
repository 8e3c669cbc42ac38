// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/cli.h"

int main(int argc, char** argv) { return voxrestore::RunCli(argc, argv); }
