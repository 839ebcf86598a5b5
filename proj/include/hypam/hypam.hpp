#ifndef HYPAM_HYPAM_HPP
#define HYPAM_HYPAM_HPP

#include "hypam/am.hpp"
#include "hypam/errors.hpp"
#include "hypam/numeric.hpp"
#include "hypam/rational.hpp"
#include "hypam/series.hpp"
#include "hypam/thresholds.hpp"

namespace hypam {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hypam

#endif  // HYPAM_HYPAM_HPP
