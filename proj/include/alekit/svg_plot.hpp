#pragma once

#include <string>

#include "alekit/bootstrap.hpp"
#include "alekit/dataset.hpp"
#include "alekit/effect_stats.hpp"

namespace alekit {

// Renders one variable's bootstrapped ALE as a standalone SVG document: the
// mean curve, its CI ribbon (bootstrapped curves only), the grey ALER band
// with dashed outer bounds, and a rug of the observed values for numeric
// variables. Categorical curves draw per-level points with CI whiskers
// instead of a ribbon.
std::string render_svg(const boot_ale_curve& curve, const aler_band& band, const dataset& d,
                       const std::string& var);

}  // namespace alekit
