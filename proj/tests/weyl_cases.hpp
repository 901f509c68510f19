#pragma once

#include "hyperflux/verify.hpp"

namespace hyperflux::testing {

using verify::annihilation_residual;
using verify::draw_param;
using verify::pkl_instance;
using verify::pkl_residual;
using verify::PklInstance;

} // namespace hyperflux::testing
