// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "common.hpp"

namespace helegeo {

// Analysis: c[k] = (1/M) sum_j x[j] exp(-2 pi i j k / M), so x[j] = sum_k c[k] exp(2 pi i j k / M).
std::vector<cplx> dft_analyze(const std::vector<cplx>& x);
// Synthesis: inverse of dft_analyze.
std::vector<cplx> dft_synthesize(const std::vector<cplx>& c);

// Signed wavenumber of FFT slot k for length M.
inline int wavenumber(int k, int m) { return k <= m / 2 ? k : k - m; }

// Harmonic conjugate of a real periodic sample vector (mean-free output).
std::vector<double> conjugate_function(const std::vector<double>& u);

// Spectral derivative of periodic complex samples on [0, 2 pi).
std::vector<cplx> periodic_derivative(const std::vector<cplx>& x);

// Resample periodic samples to a different count by zero-padding or truncation.
std::vector<cplx> periodic_resample(const std::vector<cplx>& x, int m);

}  // namespace helegeo
