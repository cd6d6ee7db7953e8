#pragma once

#include "randcrit/constants.hpp"
#include "randcrit/ensembles.hpp"
#include "randcrit/errors.hpp"
#include "randcrit/gaussian_core.hpp"
#include "randcrit/goe_spectral.hpp"
#include "randcrit/kacrice.hpp"
#include "randcrit/matgauss.hpp"
#include "randcrit/quadrature.hpp"
#include "randcrit/random.hpp"
#include "randcrit/sphere.hpp"

namespace randcrit {

inline constexpr const char* kVersion = RANDCRIT_VERSION;

}  // namespace randcrit
