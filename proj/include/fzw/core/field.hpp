#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <span>
#include <vector>

#include "fzw/core/grid.hpp"

namespace fzw {

/// Complex samples u(t_i, x_j) stored row-major by time.
struct Field {
    Grid1D grid;
    std::vector<double> times;
    std::vector<cplx> data;
    nlohmann::json metadata = nlohmann::json::object();

    Field(const Grid1D& g, std::vector<double> t)
        : grid(g), times(std::move(t)), data(times.size() * g.n()) {
        validate();
    }

    std::size_t nt() const { return times.size(); }
    std::size_t nx() const { return grid.n(); }

    cplx& at(std::size_t i, std::size_t j) { return data[i * nx() + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return data[i * nx() + j]; }

    std::span<cplx> row(std::size_t i) { return {data.data() + i * nx(), nx()}; }
    std::span<const cplx> row(std::size_t i) const { return {data.data() + i * nx(), nx()}; }

    GridFunction slice(std::size_t i) const {
        auto r = row(i);
        return GridFunction(grid, std::vector<cplx>(r.begin(), r.end()));
    }

    double max_abs() const {
        double m = 0.0;
        for (auto v : data) m = std::max(m, std::abs(v));
        return m;
    }

    double max_imag() const {
        double m = 0.0;
        for (auto v : data) m = std::max(m, std::abs(v.imag()));
        return m;
    }

    bool tagged_real() const { return metadata.value("real", false); }

    void set_real_tag(bool r) {
        if (r) metadata["real"] = true;
        else metadata.erase("real");
    }

    /// Real-tagged fields must have imaginary parts below 1e-10 * max|data|.
    bool real_tag_consistent() const { return !tagged_real() || max_imag() <= 1e-10 * max_abs(); }

    void validate() const {
        if (data.size() != times.size() * grid.n())
            throw ParameterError("field data size does not match times x grid");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1])) throw ParameterError("field times must be strictly increasing");
    }

    /// Uniform time step (throws if the time grid is not uniform).
    double uniform_dt() const {
        if (times.size() < 2) throw ParameterError("need at least two time slices");
        const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
        for (std::size_t i = 1; i < times.size(); ++i)
            if (std::abs((times[i] - times[i - 1]) - dt) > 1e-9 * std::max(1.0, std::abs(dt)) * 10)
                throw ParameterError("time grid is not uniform");
        return dt;
    }
};

inline std::vector<double> uniform_times(double t0, double t1, std::size_t count) {
    require(count >= 1, "need at least one time value");
    std::vector<double> t(count);
    if (count == 1) {
        t[0] = t0;
        return t;
    }
    const double dt = (t1 - t0) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) t[i] = t0 + dt * static_cast<double>(i);
    t.back() = t1;
    return t;
}

} // namespace fzw
