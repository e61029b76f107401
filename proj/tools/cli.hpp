// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// The abbe multi-tool: curvegen, keygen, encrypt, decrypt, put, get, bench.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abbe::cli {

enum ExitStatus : int {
  kOk = 0,
  kUsage = 1,
  kInvalid = 2,
  kNotAuthorized = 3,
  kTransport = 4,
};

/// `argv[0]` selects the tool when it names an alias such as "abbe-keygen";
/// otherwise `argv[1]` is the subcommand.
int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace abbe::cli
