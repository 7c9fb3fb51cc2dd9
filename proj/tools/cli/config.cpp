#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qgi/errors.hpp"

namespace qgi::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
    std::string out(trim(key));
    std::replace(out.begin(), out.end(), '_', '-');
    return out;
}

double parse_double(const std::string& key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError("invalid number for '" + key + "': '" + std::string(text) + "'");
    }
    return value;
}

long parse_integer(const std::string& key, std::string_view text) {
    text = trim(text);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("invalid integer for '" + key + "': '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(const std::string& key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("invalid boolean for '" + key + "': '" + std::string(text) + "'");
}

std::vector<double> parse_list(const std::string& key, std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
        if (!item.empty()) out.push_back(parse_double(key, item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

const std::set<std::string>& run_keys() {
    static const std::set<std::string> keys{
        "mi",    "mg",     "g",      "a",          "delta-a", "p0",   "T",
        "tau",   "hbar",   "convention", "engines", "grid-points", "steps", "method",
        "width", "tolerance", "format", "out",      "no-closing"};
    return keys;
}

const std::set<std::string>& sweep_keys() {
    static const std::set<std::string> keys{"axis",  "values",  "start",  "stop",
                                            "count", "spacing", "threads"};
    return keys;
}

template <class Fn>
void with(const Settings& s, const char* key, Fn&& fn) {
    if (const auto it = s.find(key); it != s.end()) fn(it->first, it->second);
}

RunConfig run_config_impl(const Settings& s, bool allow_sweep_keys) {
    for (const auto& [key, value] : s) {
        if (run_keys().count(key) == 0 && !(allow_sweep_keys && sweep_keys().count(key) != 0)) {
            throw ConfigError("unknown setting '" + key + "'");
        }
    }

    RunConfig c;
    auto number = [&](const char* key, auto& target) {
        with(s, key, [&](const std::string& k, const std::string& v) { target = parse_double(k, v); });
    };
    number("mi", c.masses.inertial);
    number("mg", c.masses.gravitational);
    number("g", c.g);
    number("a", c.a);
    number("delta-a", c.delta_a);
    number("p0", c.p0);
    number("T", c.duration);
    number("tau", c.tau);
    number("hbar", c.hbar);
    number("width", c.width);
    number("tolerance", c.tolerance);
    with(s, "convention", [&](const std::string&, const std::string& v) {
        try {
            c.convention = parse_time_convention(trim(v));
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    });
    with(s, "engines", [&](const std::string&, const std::string& v) { c.engines = parse_engines(v); });
    with(s, "grid-points", [&](const std::string& k, const std::string& v) {
        const long n = parse_integer(k, v);
        if (n < 256 || (n & (n - 1)) != 0) {
            throw ConfigError("grid-points must be a power of two >= 256");
        }
        c.resolution.n_points = static_cast<std::size_t>(n);
    });
    with(s, "steps", [&](const std::string& k, const std::string& v) {
        const long n = parse_integer(k, v);
        if (n < 1) throw ConfigError("steps must be >= 1");
        c.resolution.n_steps = static_cast<std::size_t>(n);
    });
    with(s, "method", [&](const std::string&, const std::string& v) {
        const auto m = trim(v);
        if (m == "split" || m == "split-step") {
            c.resolution.method = numeric::EvolutionMethod::SplitStep;
        } else if (m == "kernel" || m == "exact-kernel") {
            c.resolution.method = numeric::EvolutionMethod::ExactKernelConvolution;
        } else {
            throw ConfigError("method must be split or kernel");
        }
    });
    with(s, "format", [&](const std::string&, const std::string& v) {
        const auto f = trim(v);
        if (f == "json") {
            c.format = Format::Json;
        } else if (f == "csv") {
            c.format = Format::Csv;
        } else {
            throw ConfigError("format must be json or csv");
        }
    });
    with(s, "out", [&](const std::string&, const std::string& v) { c.out = std::string(trim(v)); });
    with(s, "no-closing", [&](const std::string& k, const std::string& v) { c.closing = !parse_bool(k, v); });

    if (!(c.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    return c;
}

}  // namespace

std::string EngineSet::to_string() const {
    std::string out;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!out.empty()) out += ',';
        out += name;
    };
    add(classical, "classical");
    add(analytic, "analytic");
    add(numeric, "numeric");
    return out;
}

EngineSet parse_engines(std::string_view list) {
    EngineSet set{false, false, false};
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const auto comma = list.find(',', pos);
        const auto item = trim(list.substr(pos, comma == std::string_view::npos ? list.npos : comma - pos));
        if (item == "classical") {
            set.classical = true;
        } else if (item == "analytic") {
            set.analytic = true;
        } else if (item == "numeric") {
            set.numeric = true;
        } else if (item == "all") {
            set = EngineSet{};
        } else if (!item.empty()) {
            throw ConfigError("unknown engine '" + std::string(item) + "'");
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (!set.classical && !set.analytic && !set.numeric) {
        throw ConfigError("at least one engine must be selected");
    }
    return set;
}

InterferometerSpec build_spec(const RunConfig& c) {
    if (c.a && c.delta_a) throw ConfigError("give at most one of --a and --delta-a");
    try {
        c.masses.validate();
        const double a = c.a ? *c.a
                             : levitation_acceleration(c.masses, c.g) + c.delta_a.value_or(0.0);
        if (c.closing) {
            if (c.p0.has_value() == c.duration.has_value()) {
                throw ConfigError("with closing enforced give exactly one of --T and --p0");
            }
            if (c.duration) {
                return closed_spec_for_duration(c.masses, c.g, a, *c.duration, c.convention, c.hbar,
                                                c.tau);
            }
            return closed_spec_for_momentum(c.masses, c.g, a, *c.p0, c.convention, c.hbar, c.tau);
        }
        if (!c.p0 || !c.duration) throw ConfigError("with --no-closing give both --T and --p0");
        InterferometerSpec spec;
        spec.masses = c.masses;
        spec.forces = ArmForces{c.g, a, *c.p0, c.tau, c.hbar};
        spec.duration = *c.duration;
        spec.convention = c.convention;
        spec.closed = false;
        spec.validate();
        spec.closed = spec.satisfies_closing();
        return spec;
    } catch (const NonClosableError&) {
        throw;
    } catch (const InvalidParameterError& e) {
        throw ConfigError(e.what());
    }
}

SweepAxis parse_axis(std::string_view s) {
    s = trim(s);
    if (s == "g") return SweepAxis::G;
    if (s == "a") return SweepAxis::A;
    if (s == "delta_a" || s == "delta-a") return SweepAxis::DeltaA;
    if (s == "T") return SweepAxis::T;
    if (s == "p0") return SweepAxis::P0;
    throw ConfigError("unknown sweep axis '" + std::string(s) + "' (g, a, delta_a, T, p0)");
}

std::string_view to_string(SweepAxis axis) noexcept {
    switch (axis) {
        case SweepAxis::G: return "g";
        case SweepAxis::A: return "a";
        case SweepAxis::DeltaA: return "delta_a";
        case SweepAxis::T: return "T";
        case SweepAxis::P0: return "p0";
    }
    return "?";
}

std::vector<double> make_axis_values(double start, double stop, int count, bool log_spacing) {
    if (count < 2) throw ConfigError("sweep count must be >= 2");
    if (log_spacing && !(start > 0.0 && stop > 0.0)) {
        throw ConfigError("log spacing needs positive start and stop");
    }
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double f = static_cast<double>(k) / (count - 1);
        values[k] = log_spacing ? start * std::pow(stop / start, f) : start + (stop - start) * f;
    }
    values.back() = stop;
    return values;
}

void validate_sweep(const SweepConfig& config) {
    const auto& v = config.values;
    if (v.size() < 2) throw ConfigError("a sweep needs at least two values");
    const bool increasing = v[1] > v[0];
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (increasing ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) {
            throw ConfigError("sweep values must be strictly monotone");
        }
    }
}

Settings parse_settings_text(std::string_view text) {
    Settings out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = normalize_key(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        out[key] = std::string(trim(line.substr(eq + 1)));
    }
    return out;
}

Settings load_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_settings_text(buffer.str());
}

RunConfig run_config_from_settings(const Settings& settings) {
    return run_config_impl(settings, false);
}

SweepConfig sweep_config_from_settings(const Settings& s) {
    SweepConfig c;
    c.base = run_config_impl(s, true);
    with(s, "axis", [&](const std::string&, const std::string& v) { c.axis = parse_axis(v); });
    if (s.count("axis") == 0) throw ConfigError("sweep needs --axis");
    with(s, "threads", [&](const std::string& k, const std::string& v) {
        const long n = parse_integer(k, v);
        if (n < 0) throw ConfigError("threads must be >= 0");
        c.threads = static_cast<unsigned>(n);
    });

    const bool has_values = s.count("values") != 0;
    const bool has_range = s.count("start") || s.count("stop") || s.count("count");
    if (has_values == has_range) {
        throw ConfigError("sweep needs either --values or --start/--stop/--count");
    }
    if (has_values) {
        c.values = parse_list("values", s.at("values"));
    } else {
        if (!s.count("start") || !s.count("stop") || !s.count("count")) {
            throw ConfigError("range sweeps need --start, --stop and --count");
        }
        bool log_spacing = false;
        with(s, "spacing", [&](const std::string&, const std::string& v) {
            const auto sp = trim(v);
            if (sp == "log") {
                log_spacing = true;
            } else if (sp != "lin" && sp != "linear") {
                throw ConfigError("spacing must be lin or log");
            }
        });
        c.values = make_axis_values(parse_double("start", s.at("start")),
                                    parse_double("stop", s.at("stop")),
                                    static_cast<int>(parse_integer("count", s.at("count"))),
                                    log_spacing);
    }
    validate_sweep(c);
    return c;
}

}  // namespace qgi::cli
