#pragma once

namespace srr {

// Entry point behind the srr binary. Returns the process exit code:
// 0 ok, 1 usage, 2 verification mismatch, 3 I/O or input format.
int run_cli(int argc, const char* const* argv);

}  // namespace srr
