#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace streamspec::cli {

// Exit codes: 0 when a result or verdict was produced, 1 on a usage error,
// 2 when an input (spec, machine, λ-term, word) fails to load or parse.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInput = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace streamspec::cli
