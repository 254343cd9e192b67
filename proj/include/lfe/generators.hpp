#pragma once

#include <string>
#include <vector>

#include "lfe/ends.hpp"

namespace lfe {

/// Names accepted by generate().
const std::vector<std::string>& generator_names();

/// Normalised exhaustion of a standard infinite graph. Level i is the ball
/// of radius i+1 around a fixed root, the last level has radius `depth`.
/// `degree` is only read by tree_d and K2xT3 (which always uses 3).
/// Throws ValidationError on an unknown name or depth < 1.
Exhaustion generate(const std::string& name, int depth, int degree = 3);

/// Deepest truncation alone.
TruncatedGraph generate_truncation(const std::string& name, int depth, int degree = 3);

}  // namespace lfe
