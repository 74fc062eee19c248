#pragma once

#include <iterator>

// Shared constants for the expm1m kernel. (expm1(x) - x) = x^2/2 * P(x) with
// P(x) = sum_k c[k] x^k, c[k] = 2/(k+2)!. Both backends evaluate the same
// Horner form below the cutoff so they agree to within an ulp or two.
namespace aislesim::kernels::detail {

constexpr double kSeriesCutoff = 0.5;

constexpr double kExpm1mSeries[] = {
    1.0,
    1.0 / 3.0,
    1.0 / 12.0,
    1.0 / 60.0,
    1.0 / 360.0,
    1.0 / 2520.0,
    1.0 / 20160.0,
    1.0 / 181440.0,
    1.0 / 1814400.0,
    1.0 / 19958400.0,
    1.0 / 239500800.0,
    1.0 / 3113510400.0,
    1.0 / 43589145600.0,
    1.0 / 653837184000.0,
    1.0 / 10461394944000.0,
};
constexpr int kSeriesTerms = static_cast<int>(std::size(kExpm1mSeries));

}  // namespace aislesim::kernels::detail
