#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chernband::cli {

// Exit codes: 0 success, 1 config error, 2 clustering ambiguity, 3 degeneracy,
// 4 below the large-j threshold, 5 verification or quantization failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chernband::cli
