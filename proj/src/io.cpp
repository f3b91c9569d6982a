// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

namespace helegeo {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // no negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) {
    if (header.empty()) fail(ErrorKind::Io, "csv", "empty header");
    append(header);
}

void CsvTable::append(const std::vector<std::string>& fields) {
    if (fields.size() != width_)
        fail(ErrorKind::Io, "csv", "row has " + std::to_string(fields.size()) + " fields, header has " +
                                       std::to_string(width_));
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) text_ += ',';
        text_ += csv_quote(fields[k]);
    }
    text_ += '\n';
}

CsvTable& CsvTable::row(const std::vector<double>& values) {
    std::vector<std::string> f;
    f.reserve(values.size());
    for (double v : values) f.push_back(format_number(v));
    append(f);
    ++rows_;
    return *this;
}

CsvTable& CsvTable::row(const std::vector<std::string>& fields) {
    append(fields);
    ++rows_;
    return *this;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
    fs::path tmp = p;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) fail(ErrorKind::Io, "write", "cannot open " + tmp.string());
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os) fail(ErrorKind::Io, "write", "write failed for " + tmp.string());
    }
    fs::rename(tmp, p, ec);
    if (ec) {
        fs::remove(tmp, ec);
        fail(ErrorKind::Io, "write", "cannot move output into place: " + p.string());
    }
}

SvgCanvas::SvgCanvas(double x0, double y0, double x1, double y1, int pixels)
    : x0_(x0), y0_(y0), x1_(x1), y1_(y1), pixels_(pixels) {
    if (!(x1 > x0 && y1 > y0) || pixels < 16) fail(ErrorKind::Io, "svg", "empty canvas");
}

std::string SvgCanvas::px(cplx z) const {
    double u = (z.real() - x0_) / (x1_ - x0_) * pixels_;
    double v = (y1_ - z.imag()) / (y1_ - y0_) * pixels_;
    return format_number(u) + "," + format_number(v);
}

void SvgCanvas::polyline(const std::vector<cplx>& pts, bool closed, const std::string& stroke,
                         double width) {
    if (pts.empty()) return;
    std::string d = "M" + px(pts[0]);
    for (std::size_t k = 1; k < pts.size(); ++k) d += " L" + px(pts[k]);
    if (closed) d += " Z";
    body_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
             format_number(width) + "\"/>\n";
}

void SvgCanvas::path(const BoundaryCurve& c, const std::string& stroke, double width) {
    polyline(c.samples(), true, stroke, width);
}

void SvgCanvas::marker(cplx z, double radius_px, const std::string& fill) {
    double u = (z.real() - x0_) / (x1_ - x0_) * pixels_;
    double v = (y1_ - z.imag()) / (y1_ - y0_) * pixels_;
    body_ += "<circle cx=\"" + format_number(u) + "\" cy=\"" + format_number(v) + "\" r=\"" +
             format_number(radius_px) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgCanvas::heatmap(const ScalarField& f, double lo, double hi) {
    const int n = f.n();
    const double h = f.h();
    const double span = hi > lo ? hi - lo : 1.0;
    const double cell = h / (x1_ - x0_) * pixels_;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double v = f.value(i, j);
            int g = std::isfinite(v) ? static_cast<int>(std::lround(255.0 * std::clamp((v - lo) / span, 0.0, 1.0))) : 0;
            cplx corner = f.grid.z(i, j) + cplx(-0.5 * h, 0.5 * h);
            double u = (corner.real() - x0_) / (x1_ - x0_) * pixels_;
            double w = (y1_ - corner.imag()) / (y1_ - y0_) * pixels_;
            char col[8];
            std::snprintf(col, sizeof col, "#%02x%02x%02x", g, g, g);
            body_ += "<rect x=\"" + format_number(u) + "\" y=\"" + format_number(w) + "\" width=\"" +
                     format_number(cell) + "\" height=\"" + format_number(cell) + "\" fill=\"" + col + "\"/>\n";
        }
}

void SvgCanvas::text(cplx z, const std::string& s, int size_px) {
    std::string esc;
    for (char c : s) {
        if (c == '<') esc += "&lt;";
        else if (c == '>') esc += "&gt;";
        else if (c == '&') esc += "&amp;";
        else esc += c;
    }
    double u = (z.real() - x0_) / (x1_ - x0_) * pixels_;
    double v = (y1_ - z.imag()) / (y1_ - y0_) * pixels_;
    body_ += "<text x=\"" + format_number(u) + "\" y=\"" + format_number(v) + "\" font-size=\"" +
             std::to_string(size_px) + "\">" + esc + "</text>\n";
}

std::string SvgCanvas::document() const {
    std::string p = std::to_string(pixels_);
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + p + "\" height=\"" + p +
           "\" viewBox=\"0 0 " + p + " " + p + "\">\n<rect width=\"" + p + "\" height=\"" + p +
           "\" fill=\"white\"/>\n" + body_ + "</svg>\n";
}

void bounding_box(const std::vector<const BoundaryCurve*>& curves, double margin, double& x0,
                  double& y0, double& x1, double& y1) {
    double r = 0.0;
    for (const auto* c : curves)
        for (cplx z : c->samples()) r = std::max({r, std::abs(z.real()), std::abs(z.imag())});
    if (r == 0.0) r = 1.0;
    r *= 1.0 + margin;
    x0 = y0 = -r;
    x1 = y1 = r;
}

}  // namespace helegeo
