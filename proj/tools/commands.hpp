#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fzw/core/grid.hpp"

namespace fzw::cli {

enum ExitStatus : int { ok = 0, validation_failed = 1, invalid_config = 2, numerical_failure = 3 };

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat key=value configuration. Later assignments win.
class RunConfig {
public:
    std::string command;
    std::string out_dir;
    std::map<std::string, std::string> values;

    void set(const std::string& assignment);
    void load_file(const std::string& path);

    bool has(const std::string& key) const { return values.count(key) != 0; }
    std::string str(const std::string& key, const std::string& def) const;
    std::string str(const std::string& key) const;
    double num(const std::string& key, double def) const;
    double num(const std::string& key) const;
    long integer(const std::string& key, long def) const;
    long integer(const std::string& key) const;
    std::vector<double> list(const std::string& key, const std::vector<double>& def) const;
    std::uint64_t seed() const { return static_cast<std::uint64_t>(integer("seed", 0)); }
};

/// Initial-data preset on grid g: gaussian, triangle, kink, step, zero or file.
GridFunction make_preset(const std::string& name, const Grid1D& g, const RunConfig& cfg, const std::string& prefix);

int run_command(const RunConfig& cfg, std::ostream& log);

/// Parses argv and dispatches; returns the process status.
int main_entry(int argc, char** argv);

} // namespace fzw::cli
