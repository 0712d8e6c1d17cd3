#pragma once

#include <vector>

namespace homoglab::cli {

// Exit codes: 0 success, 1 acceptance criteria failed, 2 usage or
// configuration error, 3 numerical failure, 4 I/O or file-format error.
enum ExitCode { ok = 0, criteria_failed = 1, usage_error = 2, numerical_error = 3, io_error = 4 };

int run(int argc, const char* const* argv);

}  // namespace homoglab::cli
