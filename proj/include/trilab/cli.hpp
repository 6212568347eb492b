#pragma once

#include <string>
#include <vector>

namespace trilab {

/// Entry point behind the `trilab` binary. `args` excludes the program
/// name. Returns the process exit status: 0 on success, 1 on usage or input
/// errors, 2 when the computation completed but some trials were
/// indeterminate (unless timeouts were explicitly allowed).
int run_cli(const std::vector<std::string>& args);

}  // namespace trilab
