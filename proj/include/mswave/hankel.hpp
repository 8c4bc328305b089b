#pragma once

#include "mswave/waves.hpp"

namespace mswave {

/// Hankel functions of the first kind on the positive real axis,
/// H_n^(1)(z) = J_n(z) + i Y_n(z). Ascending series for moderate z,
/// large-argument expansion beyond; relative accuracy better than 1e-10
/// across z in [1e-3, 50]. Throws std::domain_error for z <= 0.
Complex hankel1_0(double z);
Complex hankel1_1(double z);

}  // namespace mswave
