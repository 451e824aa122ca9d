#pragma once

#include <string>
#include <vector>

namespace pdqls::cli {

// Exit codes: 0 success, 2 validation error, 3 numerical-check failure,
// 64 usage / unknown flags.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace pdqls::cli
