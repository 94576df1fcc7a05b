#pragma once

namespace tessim::cli {

/// Entry point of the tess-sim command-line tool. Returns the process exit
/// code: 0 success, 1 configuration or usage error, 2 solver failure,
/// 3 comparison finished with failed cases.
int run(int argc, const char* const* argv);

}  // namespace tessim::cli
