#pragma once

#include <cstddef>

#include "afd/types.hpp"

namespace afd::detail {

/// In-place unnormalized DFT, X_k = sum_j x_j e^{-2 pi i jk/P}.
void fft_forward(CVector& data);
/// In-place unnormalized inverse DFT, x_j = sum_k X_k e^{+2 pi i jk/P}.
void fft_inverse(CVector& data);
/// Row-major square transforms of side `size`.
void fft_forward_2d(CVector& data, std::size_t size);
void fft_inverse_2d(CVector& data, std::size_t size);

}  // namespace afd::detail
