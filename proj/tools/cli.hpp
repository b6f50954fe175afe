#pragma once

#include <iostream>

namespace ualg::cli {

/// Entry point of the ualg command. Exit codes: 0 all checks hold or
/// complete, 1 a check failed, 2 usage or input error, 3 inconclusive.
int cli_main(int argc, char** argv, std::ostream& out = std::cout);

}  // namespace ualg::cli
