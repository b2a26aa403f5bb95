#pragma once

#include <complex>
#include <vector>

namespace afd {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace afd
