#pragma once

#include "hyperflux/verify.hpp"

namespace hyperflux::testing {

using verify::idx_closed_form;
using verify::kz_param;
using verify::ode_rows;
using verify::pqr_cases;
using verify::pqr_params;
using verify::random_homogeneous;
using verify::random_integrable;
using verify::random_matrix;
using verify::random_scalar_family;
using verify::resonant_mu;

} // namespace hyperflux::testing
