#include "commands.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "fzw/fzw.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace fzw::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key '" + key + "' is not a number: '" + v + "'");
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (trim(v.substr(pos)).empty()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key '" + key + "' is not an integer: '" + v + "'");
}

} // namespace

void RunConfig::set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    if (key.empty()) throw ConfigError("empty key in '" + assignment + "'");
    values[key] = trim(assignment.substr(eq + 1));
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        set(line);
    }
}

std::string RunConfig::str(const std::string& key, const std::string& def) const {
    auto it = values.find(key);
    return it == values.end() ? def : it->second;
}

std::string RunConfig::str(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

double RunConfig::num(const std::string& key, double def) const {
    return has(key) ? parse_double(key, str(key)) : def;
}

double RunConfig::num(const std::string& key) const { return parse_double(key, str(key)); }

long RunConfig::integer(const std::string& key, long def) const {
    return has(key) ? parse_long(key, str(key)) : def;
}

long RunConfig::integer(const std::string& key) const { return parse_long(key, str(key)); }

std::vector<double> RunConfig::list(const std::string& key, const std::vector<double>& def) const {
    if (!has(key)) return def;
    std::vector<double> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(parse_double(key, trim(item)));
    return out;
}

namespace {

// Files are written into a staging directory which is renamed into place once
// the command has finished.
class OutputDir {
public:
    explicit OutputDir(const std::string& final_dir) : final_(final_dir) {
        if (final_.empty()) throw ConfigError("no output directory given (--out)");
        if (fs::exists(final_) && !(fs::is_directory(final_) && fs::is_empty(final_)))
            throw ConfigError("output directory " + final_.string() + " exists and is not empty");
        staging_ = final_;
        staging_ += ".partial-" + std::to_string(::getpid());
        fs::remove_all(staging_);
        fs::create_directories(staging_);
    }
    ~OutputDir() {
        if (!committed_) {
            std::error_code ec;
            fs::remove_all(staging_, ec);
        }
    }
    std::string path(const std::string& name) const { return (staging_ / name).string(); }
    void write_json(const std::string& name, const json& j) const {
        std::ofstream out(path(name), std::ios::trunc);
        out << j.dump(2) << '\n';
        if (!out) throw FormatError("cannot write " + name);
    }
    void commit() {
        if (fs::exists(final_)) fs::remove(final_);
        if (final_.has_parent_path()) fs::create_directories(final_.parent_path());
        fs::rename(staging_, final_);
        committed_ = true;
    }

private:
    fs::path final_, staging_;
    bool committed_ = false;
};

ModelParams model_params(const RunConfig& c, double beta_default = 0.5) {
    return ModelParams(c.num("alpha", 0.0), c.num("beta", beta_default), c.num("a", 1.0), c.num("b", 2.0));
}

Grid1D config_grid(const RunConfig& c) {
    if (!c.has("n")) throw ConfigError("missing grid size (key 'n')");
    const long n = c.integer("n");
    if (n <= 0) throw ConfigError("grid size must be positive");
    const double length = c.num("length", 16.0);
    return make_grid(static_cast<std::size_t>(n), length, c.num("origin", -length / 2));
}

json params_json(const ModelParams& p) {
    return {{"alpha", p.alpha()}, {"beta", p.beta()}, {"a", p.a()}, {"b", p.b()}};
}

json echo_inputs(const RunConfig& c) {
    json j = json::object();
    for (const auto& [k, v] : c.values) j[k] = v;
    return j;
}

void write_slices_csv(const Field& f, const std::string& path, std::size_t max_slices = 16) {
    // Plot-ready subset: at most max_slices evenly spaced time slices.
    const std::size_t stride = std::max<std::size_t>(1, (f.nt() + max_slices - 1) / max_slices);
    std::vector<double> t;
    for (std::size_t i = 0; i < f.nt(); i += stride) t.push_back(f.times[i]);
    Field sub(f.grid, t);
    for (std::size_t i = 0, k = 0; i < f.nt(); i += stride, ++k)
        std::copy(f.row(i).begin(), f.row(i).end(), sub.row(k).begin());
    write_field_csv(sub, path);
}

std::vector<double> requested_times(const RunConfig& c, std::vector<double> def) {
    if (c.has("times")) return c.list("times", {});
    if (c.has("t_end")) {
        const long slices = c.integer("slices", 8);
        if (slices < 1) throw ConfigError("slices must be >= 1");
        const double te = c.num("t_end");
        std::vector<double> t;
        for (long i = 1; i <= slices; ++i) t.push_back(te * static_cast<double>(i) / static_cast<double>(slices));
        return t;
    }
    return def;
}

// Largest residual over dense seven-slice stencils centred on each requested
// time the stencil fits around.
double probe_residual(const GridFunction& u0, const GridFunction& v0, const std::vector<double>& times,
                      const ModelParams& p, double h) {
    double worst = 0.0;
    for (double t : times) {
        if (t <= 3.5 * h) continue;
        const auto probe = solve_space_fractional(u0, v0, uniform_times(t - 3 * h, t + 3 * h, 7), p);
        worst = std::max(worst, residual_space_fractional(probe, p));
    }
    return worst;
}

// Initial data named by the config; an unreadable file is a config error.
Field read_input_field(const std::string& path) {
    if (!fs::exists(path)) throw ConfigError("initial-data file " + path + " does not exist");
    try {
        return read_field(path);
    } catch (const FormatError& e) {
        throw ConfigError("initial-data file " + path + ": " + e.what());
    }
}

double periodic_gaussian(double x, double c, double w, double L) {
    double s = 0;
    for (int k = -3; k <= 3; ++k) {
        const double d = x - c + k * L;
        s += std::exp(-d * d / (2 * w * w));
    }
    return s;
}

int cmd_solve_space(const RunConfig& c, std::ostream& log) {
    const ModelParams p = model_params(c);
    const std::string u0name = c.str("u0", "gaussian");
    const Grid1D g = u0name == "file" ? read_input_field(c.str("u0_file")).grid : config_grid(c);
    const auto u0 = make_preset(u0name, g, c, "u0");
    const auto v0 = make_preset(c.str("v0", "zero"), g, c, "v0");
    const auto times = requested_times(c, {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0});
    OutputDir out(c.out_dir);
    const Field f = solve_space_fractional(u0, v0, times, p);
    write_field(f, out.path("field.fzwf"));
    write_slices_csv(f, out.path("slices.csv"));

    json run = {{"command", "solve-space"}, {"inputs", echo_inputs(c)}, {"params", params_json(p)}};
    bool ok = f.real_tag_consistent();
    const double h = c.num("residual_step", 1e-3);
    const double res = probe_residual(u0, v0, times, p, h);
    run["residual"] = res;
    run["residual_step"] = h;
    ok = ok && res < 1e-4;
    if (p.beta() == 1.0 && u0name == "gaussian" && c.str("v0", "zero") == "zero") {
        const double cen = c.num("u0_center", 0.0), w = c.num("u0_width", 0.5);
        double worst = 0;
        for (std::size_t i = 0; i < f.nt(); ++i) {
            double num = 0, den = 0;
            for (std::size_t j = 0; j < g.n(); ++j) {
                const double x = g.x(j), t = f.times[i];
                const double ref = 0.5 * (periodic_gaussian(x - t, cen, w, g.length()) +
                                          periodic_gaussian(x + t, cen, w, g.length()));
                num += std::norm(f.at(i, j) - ref);
                den += ref * ref;
            }
            worst = std::max(worst, std::sqrt(num / den));
        }
        run["dalembert_error"] = worst;
        ok = ok && worst < 1e-8;
    }
    run["pass"] = ok;
    out.write_json("run.json", run);
    out.commit();
    log << "solve-space: residual " << res << (ok ? " (pass)" : " (FAIL)") << '\n';
    return ok ? ExitStatus::ok : ExitStatus::validation_failed;
}

int cmd_solve_timefrac(const RunConfig& c, std::ostream& log) {
    ZenerConstants z{c.num("alpha", 0.5), c.num("a", 1.0), c.num("b", 2.0)};
    const Grid1D g = config_grid(c);
    const auto u0 = make_preset(c.str("u0", "triangle"), g, c, "u0");
    const auto v0 = make_preset(c.str("v0", "zero"), g, c, "v0");
    const double t_end = c.num("t_end", 0.4);
    const long steps = c.integer("steps", 1024);
    if (steps < 1) throw ConfigError("steps must be positive");
    OutputDir out(c.out_dir);
    const auto run = solve_time_fractional_full(u0, v0, z, t_end, static_cast<std::size_t>(steps), true);
    write_field(run.field, out.path("field.fzwf"));
    write_slices_csv(run.field, out.path("slices.csv"));
    double cres = 0;
    for (const auto& m : run.modes) cres = std::max(cres, constitutive_residual(m, z));
    const bool ok = cres < 1e-8 && run.field.max_imag() <= 1e-9 * run.field.max_abs();
    json rep = {{"command", "solve-timefrac"},
                {"inputs", echo_inputs(c)},
                {"params", {{"alpha", z.alpha}, {"a", z.a}, {"b", z.b}}},
                {"constitutive_residual", cres},
                {"imag_residue", run.field.max_imag() / std::max(run.field.max_abs(), 1e-300)},
                {"pass", ok}};
    out.write_json("run.json", rep);
    out.commit();
    log << "solve-timefrac: constitutive residual " << cres << (ok ? " (pass)" : " (FAIL)") << '\n';
    return ok ? ExitStatus::ok : ExitStatus::validation_failed;
}

int cmd_front_speed(const RunConfig& c, std::ostream& log) {
    ZenerConstants z{c.num("alpha", 0.5), c.num("a", 1.0), c.num("b", 2.0)};
    RunConfig cc = c;
    if (!cc.has("n")) cc.values["n"] = "2048";
    if (!cc.has("length")) cc.values["length"] = "8";
    const Grid1D g = config_grid(cc);
    const auto u0 = make_preset(c.str("u0", "triangle"), g, c, "u0");
    const auto v0 = make_preset(c.str("v0", "zero"), g, c, "v0");
    const double t_end = c.num("t_end", 0.4);
    const long steps = c.integer("steps", 1024);
    if (steps < 1) throw ConfigError("steps must be positive");
    OutputDir out(c.out_dir);
    const Field f = solve_time_fractional(u0, v0, z, t_end, static_cast<std::size_t>(steps));
    FrontOptions opt;
    opt.x_center = c.num("u0_center", 0.0);
    const auto fs_ = front_speed(f, c.num("threshold", 0.1), opt);
    const double pred = z.alpha == 0.0 ? std::sqrt((1 + z.b) / (1 + z.a)) : predicted_speed(z.a, z.b);
    const double ratio = fs_.speed_est / pred;
    const bool ok = std::abs(ratio - 1.0) <= 0.05;
    json rep = {{"command", "front-speed"},
                {"inputs", echo_inputs(c)},
                {"speed_est", fs_.speed_est},
                {"predicted_speed", pred},
                {"ratio", ratio},
                {"fit_residual", fs_.fit_residual},
                {"pass", ok}};
    std::ofstream csv(out.path("front.csv"));
    csv << "t,x\n";
    for (const auto& s : fs_.samples) csv << format_g17(s.t) << ',' << format_g17(s.x) << '\n';
    csv.close();
    out.write_json("report.json", rep);
    out.commit();
    log << "front-speed: " << fs_.speed_est << " vs " << pred << (ok ? " (pass)" : " (FAIL)") << '\n';
    return ok ? ExitStatus::ok : ExitStatus::validation_failed;
}

int cmd_hardy(const RunConfig& c, std::ostream& log) {
    HardyConfig h;
    h.sigma = c.num("sigma", 0.75);
    h.theta = c.num("theta", 3.0);
    h.fit_lo = c.num("fit_lo", h.fit_lo);
    h.fit_hi = c.num("fit_hi", h.fit_hi);
    const ModelParams p(0.0, 2 * h.sigma - 1, 1.0, 2.0);
    RunConfig cc = c;
    if (!cc.has("n")) cc.values["n"] = "4096";
    if (!cc.has("length")) cc.values["length"] = "4";
    const Grid1D g = config_grid(cc);
    OutputDir out(c.out_dir);
    json rep = {{"command", "hardy"},      {"inputs", echo_inputs(c)},
                {"theta", h.theta},         {"sigma", h.sigma},
                {"gamma_formula", h.gamma_formula()}, {"alpha_prime_formula", h.alpha_prime_formula()}};
    const auto prof = hardy_profile(h, p, g);
    {
        Field f(g, {0.0});
        std::copy(prof.values.begin(), prof.values.end(), f.data.begin());
        write_field_csv(f, out.path("profile.csv"));
    }
    try {
        const auto fit = hardy_exponent_fit(prof, h);
        rep["gamma_est"] = fit.gamma_est;
        rep["alpha_prime_est"] = fit.alpha_prime_est;
        rep["residual"] = fit.fit_residual;
        rep["peaks"] = fit.peaks;
        const bool ok = std::abs(fit.gamma_est / h.gamma_formula() - 1) <= 0.1 &&
                        std::abs(fit.alpha_prime_est / h.alpha_prime_formula() - 1) <= 0.1;
        rep["pass"] = ok;
        out.write_json("report.json", rep);
        out.commit();
        log << "hardy: gamma_est " << fit.gamma_est << " (formula " << h.gamma_formula() << ")"
            << (ok ? " pass" : " FAIL") << '\n';
        return ok ? ExitStatus::ok : ExitStatus::validation_failed;
    } catch (const Error& e) {
        rep["error"] = {{"kind", e.kind()}, {"message", e.what()}};
        rep["pass"] = false;
        out.write_json("report.json", rep);
        out.commit();
        throw;
    }
}

SymbolSpec symbol_spec_from(const RunConfig& c) {
    const std::string kind = c.str("kind", "p");
    const ModelParams p = model_params(c);
    CutoffSpec cut;
    cut.r0 = c.num("r0", 0.25);
    cut.r1 = c.num("r1", 0.5);
    cut.phi0 = c.num("phi0", 0.2);
    cut.phi1 = c.num("phi1", 0.4);
    SymbolSpec s{SymbolKind::y, p, std::nullopt, 1.0, 1.0, 0.0};
    if (kind == "y") {
        s.kind = SymbolKind::y;
    } else if (kind == "y_cut") {
        cut.axis = CutoffAxis::tau_axis;
        s.cutoff = cut;
    } else if (kind == "z") {
        s.kind = SymbolKind::z;
        s.order = 2;
    } else if (kind == "p") {
        cut.axis = CutoffAxis::xi_axis;
        s.kind = SymbolKind::p;
        s.cutoff = cut;
        s.order = 2;
    } else if (kind == "q") {
        cut.axis = CutoffAxis::tau_axis;
        s.kind = SymbolKind::q;
        s.cutoff = cut;
    } else if (kind == "a0" || kind == "a1") {
        s.kind = kind == "a0" ? SymbolKind::a0 : SymbolKind::a1;
        s.order = kind == "a0" ? 0.0 : -p.sigma();
        s.rho = (1 - p.beta()) / 2;
        s.delta = (1 + p.beta()) / 2;
    } else {
        throw ConfigError("unknown symbol kind '" + kind + "' (y, y_cut, z, p, q, a0, a1)");
    }
    s.order = c.num("order", s.order);
    s.rho = c.num("rho", s.rho);
    s.delta = c.num("delta", s.delta);
    return s;
}

int cmd_symbol_check(const RunConfig& c, std::ostream& log) {
    const auto s = symbol_spec_from(c);
    SymbolRegion r;
    r.r_min = c.num("r_min", 1.0);
    r.r_max = c.num("r_max", 32768.0);
    r.per_octave = static_cast<int>(c.integer("per_octave", 2));
    r.angles = static_cast<int>(c.integer("angles", 512));
    r.t_max = c.num("t_max", 2.0);
    const int max_order = static_cast<int>(c.integer("max_order", 3));
    const std::string expect = c.str("expect", "pass");
    if (expect != "pass" && expect != "fail") throw ConfigError("expect must be 'pass' or 'fail'");
    OutputDir out(c.out_dir);
    const auto rep = symbol_class_check(s, max_order, r);
    json consts = json::array();
    for (const auto& d : rep.constants)
        consts.push_back({{"k_freq", d.k_freq},
                          {"k_second", d.k_second},
                          {"constant", d.constant},
                          {"constant_refined", d.constant_refined},
                          {"drift", d.drift}});
    const bool ok = rep.pass == (expect == "pass");
    json j = {{"command", "symbol-check"}, {"inputs", echo_inputs(c)}, {"constants", consts},
              {"max_drift", rep.max_drift}, {"class_pass", rep.pass},   {"expected", expect},
              {"pass", ok}};
    out.write_json("report.json", j);
    out.commit();
    log << "symbol-check: " << (rep.pass ? "in class" : "not in class") << ", max drift " << rep.max_drift
        << (ok ? " (as expected)" : " (UNEXPECTED)") << '\n';
    return ok ? ExitStatus::ok : ExitStatus::validation_failed;
}

int cmd_wavefront(const RunConfig& c, std::ostream& log) {
    const std::string scenario = c.str("scenario", "space");
    if (scenario != "space" && scenario != "e0") throw ConfigError("scenario must be 'space' or 'e0'");
    const ModelParams p = model_params(c);
    RunConfig cc = c;
    if (!cc.has("n")) cc.values["n"] = "4096";
    const Grid1D g = config_grid(cc);
    GridFunction u0(g), v0(g);
    std::vector<double> kinks = c.list("kinks", {-2.0, 1.0});
    if (scenario == "space") {
        RunConfig pc = c;
        if (!pc.has("u0")) pc.values["u0"] = "kink";
        if (!pc.has("v0")) pc.values["v0"] = "gaussian";
        u0 = make_preset(pc.str("u0"), g, pc, "u0");
        v0 = make_preset(pc.str("v0"), g, pc, "v0");
    } else {
        // Mollified delta: Gaussian of two grid spacings, unit mass.
        const double w = 2 * g.spacing();
        u0 = sample(g, [&](double x) { return periodic_gaussian(x, 0.0, w, g.length()) / (w * std::sqrt(2 * pi)); });
        kinks = {0.0};
    }
    const double window = c.num("window", 8.0);
    const auto probe_times = c.list("probe_times", {0.5, 1.0, 2.0, 4.0});
    const double lo = c.num("lattice_lo", -3.5), hi = c.num("lattice_hi", 3.5), step = c.num("lattice_step", 0.25);
    if (!(step > 0) || hi < lo) throw ConfigError("invalid candidate lattice");
    const double dt = c.num("dt", g.spacing());

    WFProbe probe = WFProbe::standard(g.spacing(), dt, window);
    probe.smooth_exponent_threshold = c.num("threshold", 6.0);
    probe.floor = c.num("floor", probe.floor);

    OutputDir out(c.out_dir);
    WFEstimate est;
    const long half = static_cast<long>(probe.patch_half()) + 1;
    for (double t0 : probe_times) {
        if (t0 - half * dt < 0) throw ConfigError("probe time too close to t = 0 for the window");
        const auto slab = solve_space_fractional(u0, v0, uniform_times(t0 - half * dt, t0 + half * dt, 2 * half + 1), p);
        std::vector<WFPoint> pts;
        for (double x = lo; x <= hi + 1e-9; x += step) pts.push_back({x, t0});
        merge_estimates(est, wavefront_estimate(slab, probe, pts));
    }
    write_wavefront_csv(est, out.path("wavefront.csv"));

    const std::string pname = c.str("prediction", "stationary");
    WFPrediction pred;
    if (pname == "stationary") pred = WFPrediction::stationary(kinks);
    else if (pname == "w0") pred = WFPrediction::w0();
    else if (pname == "moving") pred = WFPrediction::moving(kinks, c.num("speed", 1.0));
    else if (pname == "none") pred = WFPrediction::none();
    else throw ConfigError("prediction must be stationary, w0, moving or none");
    const double spatial_tol = c.num("spatial_tol", window * g.spacing());
    const double angular_tol = c.num("angular_tol_deg", 15.0) * pi / 180;
    const auto rep = wf_compare(est, pred, spatial_tol, angular_tol);
    json j = {{"command", "wavefront"}, {"inputs", echo_inputs(c)}, {"params", params_json(p)},
              {"compare", to_json(rep)},  {"probe", est.provenance},   {"pass", rep.pass}};
    out.write_json("report.json", j);
    out.commit();
    log << "wavefront: " << rep.hits << " hits, " << rep.misses << " misses, " << rep.false_positives
        << " false positives" << (rep.pass ? " (pass)" : " (FAIL)") << '\n';
    return rep.pass ? ExitStatus::ok : ExitStatus::validation_failed;
}

void write_error_report(const std::string& dir, const json& err) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream out(fs::path(dir) / "error.json", std::ios::trunc);
    out << err.dump(2) << '\n';
}

} // namespace

GridFunction make_preset(const std::string& name, const Grid1D& g, const RunConfig& c, const std::string& prefix) {
    const double cen = c.num(prefix + "_center", 0.0);
    const double w = c.num(prefix + "_width", prefix == "v0" ? 1.0 / std::sqrt(2.0) : 0.5);
    const double amp = c.num(prefix + "_amplitude", 1.0);
    if (name == "zero") return GridFunction(g);
    if (!(w > 0)) throw ConfigError(prefix + "_width must be positive");
    if (name == "gaussian")
        return sample(g, [&](double x) { return amp * periodic_gaussian(x, cen, w, g.length()); });
    if (name == "triangle")
        return sample(g, [&](double x) { return amp * std::max(0.0, 1.0 - std::abs(x - cen) / w); });
    if (name == "step") return sample(g, [&](double x) { return amp * (x >= cen ? 1.0 : 0.0); });
    if (name == "kink") {
        const auto kinks = c.list("kinks", {-2.0, 1.0});
        return sample(g, [&](double x) {
            double s = 0;
            for (double k : kinks) s += std::abs(x - k);
            return amp * std::exp(-x * x / 8) * s;
        });
    }
    if (name == "file") {
        const std::string path = c.str(prefix + "_file");
        const Field f = read_input_field(path);
        if (!(f.grid == g)) throw ConfigError("initial-data file grid does not match the run grid");
        return f.slice(0);
    }
    throw ConfigError("unknown preset '" + name + "' for " + prefix);
}

int run_command(const RunConfig& cfg, std::ostream& log) {
    try {
        if (cfg.command == "solve-space") return cmd_solve_space(cfg, log);
        if (cfg.command == "solve-timefrac") return cmd_solve_timefrac(cfg, log);
        if (cfg.command == "front-speed") return cmd_front_speed(cfg, log);
        if (cfg.command == "hardy") return cmd_hardy(cfg, log);
        if (cfg.command == "symbol-check") return cmd_symbol_check(cfg, log);
        if (cfg.command == "wavefront") return cmd_wavefront(cfg, log);
        throw ConfigError("unknown command '" + cfg.command + "'");
    } catch (const ConfigError& e) {
        log << "invalid config: " << e.what() << '\n';
        return ExitStatus::invalid_config;
    } catch (const ParameterError& e) {
        log << "invalid config: " << e.what() << '\n';
        return ExitStatus::invalid_config;
    } catch (const Error& e) {
        const json err = {{"command", cfg.command}, {"error", e.kind()}, {"message", e.what()}};
        log << err.dump() << '\n';
        write_error_report(cfg.out_dir, err);
        return ExitStatus::numerical_failure;
    } catch (const fs::filesystem_error& e) {
        log << "invalid config: " << e.what() << '\n';
        return ExitStatus::invalid_config;
    }
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Spectral solvers and wavefront diagnostics for fractional Zener wave equations"};
    app.require_subcommand(1);
    std::string config_path, out_dir;
    long seed = 0;
    bool seed_given = false;
    std::vector<std::string> sets;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"solve-space", "space-fractional Cauchy solve"},
        {"solve-timefrac", "time-fractional Zener solve"},
        {"wavefront", "wavefront-set estimate and comparison"},
        {"symbol-check", "sampled symbol-class check"},
        {"hardy", "Hardy asymptotics experiment"},
        {"front-speed", "front speed of the time-fractional solution"},
    };
    for (const auto& [name, desc] : commands) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--out", out_dir, "output directory")->required();
        sub->add_option("--seed", seed, "seed for randomized sampling")->each([&](const std::string&) {
            seed_given = true;
        });
        sub->add_option("--set", sets, "override key=value (repeatable)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ExitStatus::invalid_config;
    }
    RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.out_dir = out_dir;
    try {
        if (!config_path.empty()) cfg.load_file(config_path);
        for (const auto& s : sets) cfg.set(s);
        if (seed_given) cfg.values["seed"] = std::to_string(seed);
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return ExitStatus::invalid_config;
    }
    return run_command(cfg, std::cerr);
}

} // namespace fzw::cli
