#pragma once

#include <ostream>

namespace subbundle::cli {

/// Exit status: 0 when the command ran, 1 on parse/validation/usage errors,
/// 2 when a resource limit was hit.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace subbundle::cli
