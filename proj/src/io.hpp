// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "curve.hpp"
#include "field.hpp"

namespace helegeo {

// Fixed 17-significant-digit form ("%.17g"); non-finite values print as nan, inf, -inf.
std::string format_number(double x);

// RFC-4180 table with LF line endings. Fields holding a comma, quote or newline are quoted.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    CsvTable& row(const std::vector<double>& values);
    CsvTable& row(const std::vector<std::string>& fields);
    std::size_t rows() const { return rows_; }
    std::size_t columns() const { return width_; }
    const std::string& text() const { return text_; }

private:
    void append(const std::vector<std::string>& fields);
    std::size_t width_, rows_ = 0;
    std::string text_;
};

std::string csv_quote(const std::string& field);

// Writes through a temporary file in the same directory followed by a rename.
void write_atomic(const std::string& path, const std::string& content);

// Minimal SVG 1.1 builder in world coordinates (y up), mapped onto a square canvas.
class SvgCanvas {
public:
    SvgCanvas(double x0, double y0, double x1, double y1, int pixels = 512);
    // Closed polyline through the curve samples.
    void path(const BoundaryCurve& c, const std::string& stroke, double width = 1.0);
    void polyline(const std::vector<cplx>& pts, bool closed, const std::string& stroke,
                  double width = 1.0);
    void marker(cplx z, double radius_px, const std::string& fill);
    // Gray heatmap of a field (black at lo, white at hi), one rect per cell.
    void heatmap(const ScalarField& f, double lo, double hi);
    void text(cplx z, const std::string& s, int size_px = 12);
    std::string document() const;

private:
    std::string px(cplx z) const;
    double x0_, y0_, x1_, y1_;
    int pixels_;
    std::string body_;
};

// Square bounding box (with a margin) around a set of curves.
void bounding_box(const std::vector<const BoundaryCurve*>& curves, double margin, double& x0,
                  double& y0, double& x1, double& y1);

}  // namespace helegeo
