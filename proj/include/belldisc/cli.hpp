// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace belldisc {

// Exit codes: 0 success, 2 configuration error, 3 classical-bound violation.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace belldisc
