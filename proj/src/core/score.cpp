#include "polar/core/score.hpp"

#include "polar/core/errors.hpp"
#include "polar/core/types.hpp"

#include <cmath>
#include <string>

namespace polar::core {

double clamp_score(double raw) {
    if (!std::isfinite(raw))
        throw InvalidScore("sentiment score must be finite, got " + std::to_string(raw));
    if (raw < kScoreMin) return kScoreMin;
    if (raw > kScoreMax) return kScoreMax;
    return raw;
}

} // namespace polar::core
