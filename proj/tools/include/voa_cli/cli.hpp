#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace voa::cli {

inline constexpr const char* kSchema = "voa-blocks/1";

// Runs one command line, program name excluded. Returns 0 on success, 1 when
// a check fails and 2 on a configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace voa::cli
