#include "ambec/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ambec {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string format_complex(Complex value) {
    if (value.imag() == 0.0) return format_double(value.real());
    std::string out = format_double(value.real());
    if (value.imag() >= 0.0 || std::isnan(value.imag())) out += "+";
    out += format_double(value.imag());
    out += "i";
    return out;
}

std::optional<Complex> parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) return std::nullopt;

    auto parse_real = [](std::string_view v, double& out) {
        char* end = nullptr;
        std::string tmp(v);
        out = std::strtod(tmp.c_str(), &end);
        return end == tmp.c_str() + tmp.size() && !tmp.empty();
    };

    if (s.back() == 'i') {
        std::string body = s.substr(0, s.size() - 1);
        // Split at the last '+'/'-' that is not an exponent sign or leading.
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') &&
                body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        double re = 0.0, im = 0.0;
        if (split == std::string::npos) {
            // Pure imaginary: "2i", "-3.5i", "i".
            if (body.empty() || body == "+") im = 1.0;
            else if (body == "-") im = -1.0;
            else if (!parse_real(body, im)) return std::nullopt;
            return Complex{0.0, im};
        }
        std::string im_part = body.substr(split);
        if (im_part == "+") im = 1.0;
        else if (im_part == "-") im = -1.0;
        else if (!parse_real(im_part, im)) return std::nullopt;
        if (!parse_real(body.substr(0, split), re)) return std::nullopt;
        return Complex{re, im};
    }

    double re = 0.0;
    if (!parse_real(s, re)) return std::nullopt;
    return Complex{re, 0.0};
}

ExperimentConfig ExperimentConfig::from_preset(const Preset& preset) {
    ExperimentConfig cfg;
    cfg.preset = preset.name;
    cfg.omega = preset.omega;
    cfg.delta = preset.delta;
    cfg.alpha = preset.alpha;
    cfg.beta = preset.beta;
    cfg.grid_max = preset.grid_max;
    cfg.grid_samples = preset.grid_samples;
    cfg.kinds = preset.default_kinds;
    return cfg;
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Split on commas that sit outside parentheses (witness kinds carry
// parenthesised order lists).
std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

double parse_double_or_throw(const std::string& v, int line) {
    char* end = nullptr;
    double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError(line, "expected a number, got '" + v + "'");
    return d;
}

int parse_int_or_throw(const std::string& v, int line) {
    int out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError(line, "expected an integer, got '" + v + "'");
    return out;
}

bool parse_bool_or_throw(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(line, "expected true/false, got '" + v + "'");
}

} // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    struct Entry {
        std::string section, key, value;
        int line;
    };
    std::vector<Entry> entries;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(line_no, "malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"experiment", "grid",    "witnesses", "run",
                                          "exact",      "compare", "output"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) throw ConfigError(line_no, "unknown section [" + section + "]");
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError(line_no, "key '" + key + "' outside any section");
        entries.push_back({section, key, value, line_no});
    }

    // The preset (if any) seeds the config; every explicit key then overrides.
    ExperimentConfig cfg;
    for (const Entry& e : entries) {
        if (e.section == "experiment" && e.key == "preset") {
            const Preset* p = find_preset(e.value);
            if (!p) throw ConfigError(e.line, "unknown preset '" + e.value + "'");
            cfg = from_preset(*p);
        }
    }

    for (const Entry& entry : entries) {
        const std::string& section = entry.section;
        const std::string& key = entry.key;
        const std::string& value = entry.value;
        const int line_no = entry.line;

        auto unknown = [&]() -> ConfigError {
            return ConfigError(line_no, "unknown key '" + key + "' in [" + section + "]");
        };

        if (section == "experiment") {
            if (key == "preset") {
                // already applied
            } else if (key == "omega") {
                cfg.omega = parse_double_or_throw(value, line_no);
            } else if (key == "delta") {
                cfg.delta = parse_double_or_throw(value, line_no);
            } else if (key == "alpha" || key == "beta") {
                auto z = parse_complex(value);
                if (!z) throw ConfigError(line_no, "bad complex literal '" + value + "'");
                (key == "alpha" ? cfg.alpha : cfg.beta) = *z;
            } else {
                throw unknown();
            }
        } else if (section == "grid") {
            if (key == "max") cfg.grid_max = parse_double_or_throw(value, line_no);
            else if (key == "samples") cfg.grid_samples = parse_int_or_throw(value, line_no);
            else if (key == "include_zero") cfg.include_zero = parse_bool_or_throw(value, line_no);
            else throw unknown();
        } else if (section == "witnesses") {
            if (key == "kinds") {
                cfg.kinds.clear();
                for (const std::string& item : split_list(value)) {
                    auto kind = WitnessKind::parse(item);
                    if (!kind) throw ConfigError(line_no, "unknown witness '" + item + "'");
                    try {
                        kind->check_orders();
                    } catch (const std::invalid_argument& e) {
                        throw ConfigError(line_no, e.what());
                    }
                    cfg.kinds.push_back(*kind);
                }
            } else {
                throw unknown();
            }
        } else if (section == "run") {
            if (key == "backend") {
                auto b = backend_from_string(value);
                if (!b) throw ConfigError(line_no, "unknown backend '" + value + "'");
                cfg.backend = *b;
            } else if (key == "force") {
                cfg.force = parse_bool_or_throw(value, line_no);
            } else {
                throw unknown();
            }
        } else if (section == "exact") {
            if (key == "cutoff_policy") {
                if (value == "auto") cfg.cutoffs.kind = CutoffPolicy::Kind::Auto;
                else if (value == "manual") cfg.cutoffs.kind = CutoffPolicy::Kind::Manual;
                else throw ConfigError(line_no, "cutoff_policy must be auto or manual");
            } else if (key == "cutoff_a") {
                cfg.cutoffs.cutoff_a = parse_int_or_throw(value, line_no);
            } else if (key == "cutoff_b") {
                cfg.cutoffs.cutoff_b = parse_int_or_throw(value, line_no);
            } else if (key == "tolerance") {
                cfg.tolerance = parse_double_or_throw(value, line_no);
            } else if (key == "tail_bound") {
                cfg.tail_bound = parse_double_or_throw(value, line_no);
            } else {
                throw unknown();
            }
        } else if (section == "compare") {
            if (key == "ladder") {
                cfg.ladder.clear();
                for (const std::string& item : split_list(value))
                    cfg.ladder.push_back(parse_double_or_throw(item, line_no));
            } else if (key == "min_slope") {
                cfg.min_slope = parse_double_or_throw(value, line_no);
            } else if (key == "max_residual") {
                cfg.max_residual = parse_double_or_throw(value, line_no);
            } else if (key == "fault_coefficient") {
                cfg.fault_coefficient = value;
            } else if (key == "fault_scale") {
                cfg.fault_scale = parse_double_or_throw(value, line_no);
            } else {
                throw unknown();
            }
        } else if (section == "output") {
            if (key == "directory") cfg.output_directory = value;
            else if (key == "basename") cfg.output_basename = value;
            else throw unknown();
        }
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream os;
    os << "[experiment]\n";
    if (!preset.empty()) os << "preset = " << preset << "\n";
    os << "omega = " << format_double(omega) << "\n";
    os << "delta = " << format_double(delta) << "\n";
    os << "alpha = " << format_complex(alpha) << "\n";
    os << "beta = " << format_complex(beta) << "\n";
    os << "\n[grid]\n";
    os << "max = " << format_double(grid_max) << "\n";
    os << "samples = " << grid_samples << "\n";
    os << "include_zero = " << (include_zero ? "true" : "false") << "\n";
    os << "\n[witnesses]\n";
    os << "kinds = ";
    for (std::size_t i = 0; i < kinds.size(); ++i)
        os << (i ? ", " : "") << kinds[i].name();
    os << "\n";
    os << "\n[run]\n";
    os << "backend = " << to_string(backend) << "\n";
    os << "force = " << (force ? "true" : "false") << "\n";
    os << "\n[exact]\n";
    os << "cutoff_policy = "
       << (cutoffs.kind == CutoffPolicy::Kind::Auto ? "auto" : "manual") << "\n";
    os << "cutoff_a = " << cutoffs.cutoff_a << "\n";
    os << "cutoff_b = " << cutoffs.cutoff_b << "\n";
    os << "tolerance = " << format_double(tolerance) << "\n";
    os << "tail_bound = " << format_double(tail_bound) << "\n";
    os << "\n[compare]\n";
    os << "ladder = ";
    for (std::size_t i = 0; i < ladder.size(); ++i)
        os << (i ? ", " : "") << format_double(ladder[i]);
    os << "\n";
    os << "min_slope = " << format_double(min_slope) << "\n";
    os << "max_residual = " << format_double(max_residual) << "\n";
    os << "fault_coefficient = " << fault_coefficient << "\n";
    os << "fault_scale = " << format_double(fault_scale) << "\n";
    os << "\n[output]\n";
    os << "directory = " << output_directory << "\n";
    os << "basename = " << output_basename << "\n";
    return os.str();
}

} // namespace ambec
