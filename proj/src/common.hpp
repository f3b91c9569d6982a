// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace helegeo {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

enum class ErrorKind { Domain, Numeric, Scenario, Data, Schema, Io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string where, const std::string& what, double residual = NAN)
        : std::runtime_error(where + ": " + what), kind_(kind), where_(std::move(where)),
          residual_(residual) {}
    ErrorKind kind() const { return kind_; }
    const std::string& where() const { return where_; }
    double residual() const { return residual_; }

private:
    ErrorKind kind_;
    std::string where_;
    double residual_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& where, const std::string& what,
                              double residual = NAN) {
    throw Error(k, where, what, residual);
}

// Standard-flow quantities on the chart at 0.
inline double standard_radius(double t) { return std::sqrt(t / (1.0 - t)); }
inline double standard_time(double r) { return r * r / (1.0 + r * r); }
inline double standard_kappa(cplx z) {
    double q = 1.0 + std::norm(z);
    return kPi * q * q;
}
// Fubini-Study density 1/(pi (1+|z|^2)^2).
inline double fs_density(cplx z) { return 1.0 / standard_kappa(z); }

inline double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0 ? a + kTwoPi : a;
}

// Chebyshev points of the first kind mapped to [a, b], increasing.
std::vector<double> chebyshev_grid(double a, double b, int n);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Fornberg finite-difference weights for derivative order m at x0 from nodes xs.
std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m);

// Barycentric-free Lagrange basis values at x for nodes xs.
void lagrange_basis(double x, const double* xs, int n, double* out);

// Index of the first node in a stencil of width w centred on x within sorted nodes.
int stencil_start(const std::vector<double>& nodes, double x, int w);

// C-infinity step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u);

// Worker count from HELEGEO_THREADS, capped by hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, n) across thread_count() workers; each index is
// handled by exactly one worker, so results written per-index are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace helegeo
