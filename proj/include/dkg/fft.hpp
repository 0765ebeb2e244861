#pragma once

#include "dkg/grid.hpp"

namespace dkg {

// Unnormalised in-place 3D DFT of an n^3 block (FFTW sign convention:
// sign = -1 forward, +1 backward). Plans are cached per (n, sign, policy).
void fft3(cplx* data, int n, int sign);

}  // namespace dkg

namespace dkg {

// Unnormalised DFT along t of a [nt][howmany] row-major block.
void fft_time(cplx* data, int nt, std::size_t howmany, int sign);

}  // namespace dkg
