#pragma once

namespace specreg {

/// Entry point of the `specreg` tool. Returns 0 on success, 1 on invalid input
/// or usage errors and 2 on numerical failure.
int cli_main(int argc, char** argv);

}  // namespace specreg
