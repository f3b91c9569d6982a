// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "common.hpp"

namespace helegeo {

enum class Chart { Zero, Infinity };

// Vertex grid x_i = -L + i h, h = 2L/(n-1), in both directions. With n even the origin is
// not a node.
struct GridSpec {
    double L = 2.0;
    int n = 512;
    double h() const { return 2.0 * L / (n - 1); }
    double x(int i) const { return -L + i * h(); }
    cplx z(int i, int j) const { return {x(i), x(j)}; }
};

// Real values on a GridSpec. A logarithmic pole lelong * log|z|^2 is kept symbolically:
// `values` hold the smooth part.
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;
    double lelong = 0.0;
    Chart chart = Chart::Zero;

    ScalarField() = default;
    explicit ScalarField(GridSpec g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.n) * g.n, fill) {}

    int n() const { return grid.n; }
    double h() const { return grid.h(); }
    double& at(int i, int j) { return values[static_cast<std::size_t>(j) * grid.n + i]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * grid.n + i]; }
    // Full value including the pole term.
    double value(int i, int j) const {
        cplx z = grid.z(i, j);
        return at(i, j) + (lelong != 0.0 ? lelong * std::log(std::norm(z)) : 0.0);
    }
};

}  // namespace helegeo
