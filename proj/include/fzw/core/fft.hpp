#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

namespace fzw::fft {

// FFTW planning is not thread-safe, execution with new-array execute is.
// Plans are cached per (size, direction) and created unaligned so they apply
// to any std::complex<double> buffer.
namespace detail {

inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

inline fftw_plan plan_for(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // In-place plan: new-array execution must match the plan's placement.
    std::vector<fftw_complex> a(n);
    fftw_plan p = fftw_plan_dft_1d(n, a.data(), a.data(), sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, p);
    return p;
}

inline void run(std::span<std::complex<double>> data, int sign) {
    if (data.size() < 2) return;
    fftw_plan p = plan_for(static_cast<int>(data.size()), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

} // namespace detail

/// In-place forward transform, sum_j u_j exp(-2 pi i jk/n).
inline void forward(std::span<std::complex<double>> data) { detail::run(data, FFTW_FORWARD); }

/// In-place inverse transform including the 1/n normalization.
inline void inverse(std::span<std::complex<double>> data) {
    detail::run(data, FFTW_BACKWARD);
    const double s = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= s;
}

inline std::vector<std::complex<double>> forward_copy(std::span<const std::complex<double>> in) {
    std::vector<std::complex<double>> out(in.begin(), in.end());
    forward(out);
    return out;
}

inline std::vector<std::complex<double>> inverse_copy(std::span<const std::complex<double>> in) {
    std::vector<std::complex<double>> out(in.begin(), in.end());
    inverse(out);
    return out;
}

/// Row-major 2D transform of an (rows x cols) array, in place.
inline void forward_2d(std::vector<std::complex<double>>& data, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r)
        forward(std::span(data.data() + r * cols, cols));
    std::vector<std::complex<double>> col(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) col[r] = data[r * cols + c];
        forward(col);
        for (std::size_t r = 0; r < rows; ++r) data[r * cols + c] = col[r];
    }
}

} // namespace fzw::fft
