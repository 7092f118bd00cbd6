#pragma once

#include "kirchhoff/errors.hpp"
#include "kirchhoff/radial.hpp"
#include "kirchhoff/profiles.hpp"
#include "kirchhoff/functional.hpp"
#include "kirchhoff/nehari.hpp"
#include "kirchhoff/extremals.hpp"
#include "kirchhoff/thresholds.hpp"

namespace kirchhoff {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kirchhoff
