#ifndef COOLSCHED_CLI_HPP
#define COOLSCHED_CLI_HPP

namespace coolsched {

/// Entry point behind the coolsched binary. Exit codes: 0 success,
/// 2 usage/validation errors, 1 internal errors.
int run_cli(int argc, const char* const* argv);

}  // namespace coolsched

#endif
