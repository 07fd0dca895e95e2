#pragma once

namespace polar::core {

// Normalizes a raw agent-reported sentiment into the [-1, +1] score domain.
// Throws InvalidScore on NaN/inf. Idempotent.
double clamp_score(double raw);

} // namespace polar::core
