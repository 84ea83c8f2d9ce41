#pragma once

namespace oodlab {

inline constexpr const char* kVersion = "0.1.0";

// Identifier of the sampling generator; recorded in every report so results
// can be reproduced bit-for-bit by a matching implementation.
inline constexpr const char* kRngId = "mt19937_64:v1";

}  // namespace oodlab
