#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "fzw/core/field.hpp"

namespace fzw {

static_assert(std::endian::native == std::endian::little, "field I/O assumes a little-endian host");

namespace detail {

constexpr char field_magic[4] = {'F', 'Z', 'W', 'F'};
constexpr std::uint8_t field_version = 0x01;
// The binary header carries no grid geometry, so length and origin travel in
// the metadata blob under this key and are stripped again on read.
constexpr const char* grid_key = "_grid";

template <class T>
void put(std::string& buf, T v) {
    char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    buf.append(bytes, sizeof(T));
}

class Reader {
public:
    explicit Reader(const std::string& s) : s_(s) {}
    template <class T>
    T get() {
        if (pos_ + sizeof(T) > s_.size()) throw FormatError("truncated field file");
        T v;
        std::memcpy(&v, s_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }
    std::string bytes(std::size_t n) {
        if (pos_ + n > s_.size()) throw FormatError("truncated field file");
        std::string out = s_.substr(pos_, n);
        pos_ += n;
        return out;
    }
    std::size_t remaining() const { return s_.size() - pos_; }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline std::string encode_field(const Field& f) {
    std::string buf;
    buf.append(detail::field_magic, 4);
    buf.push_back(static_cast<char>(detail::field_version));
    detail::put<std::uint32_t>(buf, static_cast<std::uint32_t>(f.nt()));
    detail::put<std::uint32_t>(buf, static_cast<std::uint32_t>(f.nx()));
    for (double t : f.times) detail::put<double>(buf, t);
    for (auto v : f.data) {
        detail::put<double>(buf, v.real());
        detail::put<double>(buf, v.imag());
    }
    nlohmann::json meta = f.metadata;
    meta[detail::grid_key] = {{"length", f.grid.length()}, {"origin", f.grid.origin()}};
    const std::string js = meta.dump();
    detail::put<std::uint32_t>(buf, static_cast<std::uint32_t>(js.size()));
    buf += js;
    return buf;
}

inline Field decode_field(const std::string& buf) {
    detail::Reader r(buf);
    if (buf.size() < 5 || std::memcmp(buf.data(), detail::field_magic, 4) != 0)
        throw FormatError("bad magic, not a field file");
    r.bytes(4);
    const auto version = r.get<std::uint8_t>();
    if (version != detail::field_version) throw FormatError("unsupported field version");
    const auto nt = r.get<std::uint32_t>();
    const auto nx = r.get<std::uint32_t>();
    // The payload size is fully determined by the header; check it before
    // allocating so that a lying header fails cleanly.
    const std::uint64_t payload = 8ull * nt + 16ull * nt * nx + 4ull;
    if (payload > r.remaining()) throw FormatError("payload shorter than header dimensions");
    std::vector<double> times(nt);
    for (auto& t : times) t = r.get<double>();
    std::vector<cplx> data(static_cast<std::size_t>(nt) * nx);
    for (auto& v : data) {
        const double re = r.get<double>();
        const double im = r.get<double>();
        v = {re, im};
    }
    const auto mlen = r.get<std::uint32_t>();
    if (mlen != r.remaining()) throw FormatError("metadata length does not match file size");
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(r.bytes(mlen));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed metadata: ") + e.what());
    }
    if (!meta.is_object() || !meta.contains(detail::grid_key))
        throw FormatError("metadata lacks grid description");
    const auto& g = meta[detail::grid_key];
    Grid1D grid = [&] {
        try {
            return make_grid(nx, g.at("length").get<double>(), g.at("origin").get<double>());
        } catch (const ParameterError& e) {
            throw FormatError(std::string("invalid grid in field file: ") + e.what());
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(std::string("invalid grid in field file: ") + e.what());
        }
    }();
    meta.erase(detail::grid_key);
    try {
        Field f(grid, std::move(times));
        f.data = std::move(data);
        f.metadata = std::move(meta);
        return f;
    } catch (const ParameterError& e) {
        throw FormatError(std::string("inconsistent field file: ") + e.what());
    }
}

inline void write_field(const Field& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    const std::string buf = encode_field(f);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw FormatError("write failed for " + path);
}

inline Field read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_field(buf);
}

inline std::string format_g17(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

inline void write_field_csv(const Field& f, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    out << "t,x,re,im\n";
    for (std::size_t i = 0; i < f.nt(); ++i)
        for (std::size_t j = 0; j < f.nx(); ++j) {
            const auto v = f.at(i, j);
            out << format_g17(f.times[i]) << ',' << format_g17(f.grid.x(j)) << ',' << format_g17(v.real())
                << ',' << format_g17(v.imag()) << '\n';
        }
}

} // namespace fzw
