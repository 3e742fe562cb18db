#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polyconduche {

/// Exit codes: 0 success or Pass, 1 Fail / NotBasis / Distinct, 2 Unknown,
/// 3 usage or schema error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyconduche
