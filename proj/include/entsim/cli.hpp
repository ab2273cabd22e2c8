// cli.hpp
// Command-line front end. Exit codes: 0 success, 1 verification or invariant
// failure, 2 usage error.

#pragma once

namespace entsim {

int cli_main(int argc, const char* const* argv);

}  // namespace entsim
