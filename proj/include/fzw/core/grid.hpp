#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "fzw/core/errors.hpp"
#include "fzw/core/params.hpp"

namespace fzw {

using cplx = std::complex<double>;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Uniform periodic grid x_j = origin + j*spacing, j = 0..n-1.
class Grid1D {
public:
    std::size_t n() const { return n_; }
    double length() const { return length_; }
    double origin() const { return origin_; }
    double spacing() const { return length_ / static_cast<double>(n_); }
    double x(std::size_t j) const { return origin_ + static_cast<double>(j) * spacing(); }

    bool operator==(const Grid1D& o) const {
        return n_ == o.n_ && length_ == o.length_ && origin_ == o.origin_;
    }

    friend Grid1D make_grid(std::size_t n, double length, double origin);

private:
    Grid1D(std::size_t n, double length, double origin) : n_(n), length_(length), origin_(origin) {}
    std::size_t n_;
    double length_;
    double origin_;
};

inline Grid1D make_grid(std::size_t n, double length, double origin) {
    if (!is_power_of_two(n) || n < 8)
        throw ParameterError("grid size must be a power of two >= 8, got " + std::to_string(n));
    if (!(length > 0.0) || !std::isfinite(length))
        throw ParameterError("grid length must be positive");
    if (!std::isfinite(origin)) throw ParameterError("grid origin must be finite");
    return Grid1D(n, length, origin);
}

/// Signed wavenumber index of FFT bin k: 0..n/2-1, then -n/2..-1.
inline long signed_index(std::size_t k, std::size_t n) {
    return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

/// Angular frequencies 2*pi*k/period in FFT-native order, for any count n.
inline std::vector<double> fft_frequencies(std::size_t n, double period) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = 2.0 * pi * static_cast<double>(signed_index(k, n)) / period;
    return out;
}

/// Dual frequencies in FFT-native order: index k holds 2*pi*k/L for
/// k < n/2 and 2*pi*(k-n)/L otherwise.
inline std::vector<double> dual_frequencies(const Grid1D& g) {
    return fft_frequencies(g.n(), g.length());
}

/// Native bin holding the j-th entry of the monotone ordering
/// (j = 0 is the Nyquist frequency -n/2).
inline std::size_t monotone_to_native(std::size_t j, std::size_t n) { return (j + n / 2) % n; }
inline std::size_t native_to_monotone(std::size_t k, std::size_t n) { return (k + n / 2) % n; }

/// Dual frequencies sorted ascending: -n/2, ..., n/2-1 (times 2*pi/L).
inline std::vector<double> monotone_frequencies(const Grid1D& g) {
    auto native = dual_frequencies(g);
    std::vector<double> out(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) out[j] = native[monotone_to_native(j, g.n())];
    return out;
}

/// One row of samples on a grid.
struct GridFunction {
    Grid1D grid;
    std::vector<cplx> values;

    GridFunction(const Grid1D& g) : grid(g), values(g.n()) {}
    GridFunction(const Grid1D& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.n()) throw ParameterError("grid function size does not match grid");
    }

    bool is_real(double rel_tol = 0.0) const {
        double mx = 0.0, im = 0.0;
        for (auto v : values) {
            mx = std::max(mx, std::abs(v));
            im = std::max(im, std::abs(v.imag()));
        }
        return im <= rel_tol * mx;
    }
};

inline GridFunction sample(const Grid1D& g, const std::function<cplx(double)>& f) {
    GridFunction out(g);
    for (std::size_t j = 0; j < g.n(); ++j) out.values[j] = f(g.x(j));
    return out;
}

} // namespace fzw
