#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfan {

/**
 * Command dispatch behind the qfan binary. Returns the process exit code:
 * 0 success, 1 malformed input / I-O, 2 domain validation failure. All
 * results are JSON on `out`.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfan
