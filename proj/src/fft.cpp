// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace helegeo {
namespace {

std::mutex plan_mu;
std::map<std::pair<int, int>, fftw_plan> plans;

// Planner calls are not thread-safe in FFTW; executing a finished plan on new arrays is.
fftw_plan plan_for(int n, int sign) {
    std::lock_guard<std::mutex> lk(plan_mu);
    auto key = std::make_pair(n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans.emplace(key, p);
    return p;
}

std::vector<cplx> run(const std::vector<cplx>& x, int sign) {
    const int n = static_cast<int>(x.size());
    std::vector<cplx> in(x), out(n);
    fftw_execute_dft(plan_for(n, sign), reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

std::vector<cplx> dft_analyze(const std::vector<cplx>& x) {
    auto c = run(x, FFTW_FORWARD);
    const double s = 1.0 / static_cast<double>(x.size());
    for (auto& v : c) v *= s;
    return c;
}

std::vector<cplx> dft_synthesize(const std::vector<cplx>& c) { return run(c, FFTW_BACKWARD); }

std::vector<double> conjugate_function(const std::vector<double>& u) {
    const int m = static_cast<int>(u.size());
    std::vector<cplx> x(u.begin(), u.end());
    auto c = dft_analyze(x);
    for (int k = 0; k < m; ++k) {
        int w = wavenumber(k, m);
        if (w == 0 || 2 * k == m) c[k] = 0.0;
        else c[k] *= cplx(0.0, w > 0 ? -1.0 : 1.0);
    }
    auto y = dft_synthesize(c);
    std::vector<double> out(m);
    for (int k = 0; k < m; ++k) out[k] = y[k].real();
    return out;
}

std::vector<cplx> periodic_derivative(const std::vector<cplx>& x) {
    const int m = static_cast<int>(x.size());
    auto c = dft_analyze(x);
    for (int k = 0; k < m; ++k) {
        int w = wavenumber(k, m);
        c[k] *= (2 * k == m) ? cplx(0.0) : cplx(0.0, static_cast<double>(w));
    }
    return dft_synthesize(c);
}

std::vector<cplx> periodic_resample(const std::vector<cplx>& x, int m) {
    const int n = static_cast<int>(x.size());
    if (m == n) return x;
    auto c = dft_analyze(x);
    std::vector<cplx> d(m, 0.0);
    int kmax = std::min(n, m) / 2;
    for (int k = -kmax + 1; k < kmax; ++k) d[(k + m) % m] = c[(k + n) % n];
    if (m > n && n % 2 == 0) {
        // split the Nyquist mode symmetrically
        d[n / 2] += 0.5 * c[n / 2];
        d[m - n / 2] += 0.5 * c[n / 2];
    }
    return dft_synthesize(d);
}

}  // namespace helegeo
