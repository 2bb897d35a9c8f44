#include "ambec/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace ambec {

std::string_view to_string(Backend b) {
    switch (b) {
    case Backend::Perturbative: return "perturbative";
    case Backend::Exact: return "exact";
    case Backend::Both: return "both";
    }
    return "?";
}

std::optional<Backend> backend_from_string(std::string_view s) {
    if (s == "perturbative") return Backend::Perturbative;
    if (s == "exact") return Backend::Exact;
    if (s == "both") return Backend::Both;
    return std::nullopt;
}

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

SystemParams::SystemParams(double omega_, double delta_, Complex alpha_, Complex beta_)
    : omega(omega_), delta(delta_), alpha(alpha_), beta(beta_) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("SystemParams: omega must be positive and finite");
    if (delta == 0.0 || !std::isfinite(delta))
        throw std::invalid_argument("SystemParams: delta must be nonzero and finite");
    if (!finite(alpha) || !finite(beta))
        throw std::invalid_argument("SystemParams: amplitudes must be finite");
}

TimeGrid::TimeGrid(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty())
        throw std::invalid_argument("TimeGrid: empty grid");
    double prev = -1.0;
    for (double s : samples_) {
        if (!std::isfinite(s) || s < 0.0)
            throw std::invalid_argument("TimeGrid: samples must be finite and >= 0");
        if (s <= prev)
            throw std::invalid_argument("TimeGrid: samples must be strictly increasing");
        prev = s;
    }
}

TimeGrid TimeGrid::uniform(double max_omega_t, int samples, bool include_zero) {
    if (max_omega_t < 0.0)
        throw std::invalid_argument("TimeGrid: max must be >= 0");
    std::vector<double> pts;
    if (max_omega_t == 0.0) {
        pts.push_back(0.0);
        return TimeGrid(std::move(pts));
    }
    if (samples < 1)
        throw std::invalid_argument("TimeGrid: need at least one sample");
    if (include_zero) pts.push_back(0.0);
    for (int i = 1; i <= samples; ++i)
        pts.push_back(max_omega_t * static_cast<double>(i) / static_cast<double>(samples));
    return TimeGrid(std::move(pts));
}

bool ValidationReport::hard_error() const {
    return std::any_of(items.begin(), items.end(), [](const Violation& v) {
        return v.severity == Violation::Severity::Error;
    });
}

std::vector<std::string> ValidationReport::warnings() const {
    std::vector<std::string> out;
    for (const auto& v : items)
        if (v.severity == Violation::Severity::Warning) out.push_back(v.message);
    return out;
}

std::vector<std::string> ValidationReport::errors() const {
    std::vector<std::string> out;
    for (const auto& v : items)
        if (v.severity == Violation::Severity::Error) out.push_back(v.message);
    return out;
}

ValidationReport validate(double omega, double delta, Complex alpha, Complex beta,
                          std::span<const double> grid_omega_t, Backend backend) {
    ValidationReport report;
    auto error = [&](std::string msg) {
        report.items.push_back({Violation::Severity::Error, std::move(msg)});
    };
    auto warning = [&](std::string msg) {
        report.items.push_back({Violation::Severity::Warning, std::move(msg)});
    };

    if (!(omega > 0.0) || !std::isfinite(omega))
        error("omega must be positive (omega = 0 makes every witness trivial)");
    if (delta == 0.0 || !std::isfinite(delta))
        error("delta must be nonzero (the evolution coefficients divide by delta)");
    if (!finite(alpha) || !finite(beta))
        error("coherent amplitudes must be finite");

    if (grid_omega_t.empty()) {
        error("time grid is empty");
    } else {
        double prev = -1.0;
        bool increasing = true;
        for (double s : grid_omega_t) {
            if (!std::isfinite(s) || s < 0.0) {
                error("grid samples must be finite and >= 0");
                increasing = false;
                break;
            }
            if (s <= prev) {
                increasing = false;
                break;
            }
            prev = s;
        }
        if (!increasing && !report.hard_error())
            error("grid samples must be strictly increasing");

        if (increasing) {
            double max_wt = grid_omega_t.back();
            bool uses_pert = backend != Backend::Exact;
            bool uses_exact = backend != Backend::Perturbative;
            if (uses_pert && max_wt >= 1.0)
                warning("outside stated validity: perturbative backend requested with "
                        "max omega*t >= 1");
            if (uses_exact && std::abs(alpha) > 5.0)
                warning("exact backend with |alpha| > 5 is a heavy run at desk scale");
        }
    }
    return report;
}

ValidationReport validate(const SystemParams& params, const TimeGrid& grid, Backend backend) {
    return validate(params.omega, params.delta, params.alpha, params.beta, grid.samples(),
                    backend);
}

namespace {

struct TagInfo {
    WitnessTag tag;
    const char* name;
    int order_count; // number of integer order parameters
    bool mode_suffix; // Lee R carries the mode as a third argument
};

constexpr TagInfo kTags[] = {
    {WitnessTag::VarXa, "VarXa", 0, false},   {WitnessTag::VarYa, "VarYa", 0, false},
    {WitnessTag::VarXb, "VarXb", 0, false},   {WitnessTag::VarYb, "VarYb", 0, false},
    {WitnessTag::VarXab, "VarXab", 0, false}, {WitnessTag::VarYab, "VarYab", 0, false},
    {WitnessTag::AmpSq1a, "AmpSq1a", 0, false}, {WitnessTag::AmpSq2a, "AmpSq2a", 0, false},
    {WitnessTag::AmpSq1b, "AmpSq1b", 0, false}, {WitnessTag::AmpSq2b, "AmpSq2b", 0, false},
    {WitnessTag::Da, "Da", 0, false},         {WitnessTag::Db, "Db", 0, false},
    {WitnessTag::Dab, "Dab", 0, false},
    {WitnessTag::HOAa, "HOAa", 1, false},     {WitnessTag::HOAb, "HOAb", 1, false},
    {WitnessTag::LeeRa, "LeeRa", 2, false},   {WitnessTag::LeeRb, "LeeRb", 2, false},
    {WitnessTag::HZ1, "HZ1", 0, false},       {WitnessTag::HZ2, "HZ2", 0, false},
    {WitnessTag::Duan, "Duan", 0, false},
    {WitnessTag::HZ1Higher, "HZ1Higher", 2, false},
    {WitnessTag::HZ2Higher, "HZ2Higher", 2, false},
};

const TagInfo& info_for(WitnessTag tag) {
    for (const auto& t : kTags)
        if (t.tag == tag) return t;
    throw std::logic_error("unknown witness tag");
}

} // namespace

std::string WitnessKind::base_name() const { return info_for(tag).name; }

std::string WitnessKind::name() const {
    const TagInfo& ti = info_for(tag);
    char buf[64];
    if (tag == WitnessTag::LeeRa || tag == WitnessTag::LeeRb) {
        std::snprintf(buf, sizeof(buf), "LeeR(%d,%d,%c)", n, m,
                      tag == WitnessTag::LeeRa ? 'a' : 'b');
        return buf;
    }
    if (ti.order_count == 1) {
        std::snprintf(buf, sizeof(buf), "%s(%d)", ti.name, n);
        return buf;
    }
    if (ti.order_count == 2) {
        std::snprintf(buf, sizeof(buf), "%s(%d,%d)", ti.name, n, m);
        return buf;
    }
    return ti.name;
}

double WitnessKind::threshold() const {
    switch (tag) {
    case WitnessTag::VarXa:
    case WitnessTag::VarYa:
    case WitnessTag::VarXb:
    case WitnessTag::VarYb:
    case WitnessTag::VarXab:
    case WitnessTag::VarYab:
        return 0.25;
    default:
        return 0.0;
    }
}

bool WitnessKind::has_closed_form() const {
    switch (tag) {
    case WitnessTag::LeeRa:
    case WitnessTag::LeeRb:
        return false;
    case WitnessTag::HZ1Higher:
        return n == 1 && m == 2;
    default:
        return true;
    }
}

void WitnessKind::check_orders() const {
    switch (tag) {
    case WitnessTag::HOAa:
    case WitnessTag::HOAb:
        if (n < 2)
            throw std::invalid_argument(name() + ": antibunching order n must be >= 2");
        break;
    case WitnessTag::LeeRa:
    case WitnessTag::LeeRb:
        if (!(1 <= m && m <= n))
            throw std::invalid_argument(name() + ": Lee orders must satisfy 1 <= m <= l");
        break;
    case WitnessTag::HZ1Higher:
    case WitnessTag::HZ2Higher:
        if (n < 1 || m < 1)
            throw std::invalid_argument(name() + ": orders must satisfy n >= 1, m >= 1");
        break;
    default:
        break;
    }
}

namespace {

bool parse_int(std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

} // namespace

std::optional<WitnessKind> WitnessKind::parse(std::string_view text) {
    // Strip whitespace.
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);

    auto paren = s.find('(');
    std::string head = s.substr(0, paren);
    std::vector<std::string> args;
    if (paren != std::string::npos) {
        if (s.back() != ')') return std::nullopt;
        std::string inner = s.substr(paren + 1, s.size() - paren - 2);
        std::size_t pos = 0;
        while (pos <= inner.size()) {
            auto comma = inner.find(',', pos);
            if (comma == std::string::npos) {
                args.push_back(inner.substr(pos));
                break;
            }
            args.push_back(inner.substr(pos, comma - pos));
            pos = comma + 1;
        }
    }

    // "LeeR(l,m,a)" spells the mode as the third argument.
    if (head == "LeeR") {
        if (args.size() != 3) return std::nullopt;
        int l = 0, m = 0;
        if (!parse_int(args[0], l) || !parse_int(args[1], m)) return std::nullopt;
        if (args[2] == "a") return lee_a(l, m);
        if (args[2] == "b") return lee_b(l, m);
        return std::nullopt;
    }

    for (const auto& ti : kTags) {
        if (head != ti.name) continue;
        WitnessKind kind{ti.tag, 0, 0};
        if (static_cast<int>(args.size()) != ti.order_count) return std::nullopt;
        if (ti.order_count >= 1 && !parse_int(args[0], kind.n)) return std::nullopt;
        if (ti.order_count >= 2 && !parse_int(args[1], kind.m)) return std::nullopt;
        return kind;
    }
    return std::nullopt;
}

namespace {

std::vector<Preset> make_presets() {
    using WK = WitnessKind;
    auto var_kinds = std::vector<WK>{
        WK::simple(WitnessTag::VarXa), WK::simple(WitnessTag::VarYa),
        WK::simple(WitnessTag::VarXb), WK::simple(WitnessTag::VarYb),
        WK::simple(WitnessTag::VarXab), WK::simple(WitnessTag::VarYab)};
    auto amp_kinds = std::vector<WK>{
        WK::simple(WitnessTag::AmpSq1a), WK::simple(WitnessTag::AmpSq2a),
        WK::simple(WitnessTag::AmpSq1b), WK::simple(WitnessTag::AmpSq2b)};
    auto d_kinds = std::vector<WK>{WK::simple(WitnessTag::Da), WK::simple(WitnessTag::Db),
                                   WK::simple(WitnessTag::Dab)};
    auto ent_kinds = std::vector<WK>{WK::simple(WitnessTag::HZ1), WK::simple(WitnessTag::HZ2),
                                     WK::simple(WitnessTag::Duan)};
    auto higher_kinds = std::vector<WK>{
        WK::hoa_a(3), WK::hoa_a(4), WK::hoa_b(3), WK::hoa_b(4),
        WK::hz2_higher(1, 1), WK::hz2_higher(1, 2), WK::hz2_higher(1, 3),
        WK::hz1_higher(1, 2)};

    const double omega = 100.0;
    const double delta = 1.0e4;
    std::vector<Preset> out;
    out.push_back({"fig1", omega, delta, {5, 0}, {2, 0},
                   "quadrature variances, atomic/molecular/compound modes", var_kinds, 0.5, 200});
    out.push_back({"fig1d", omega, delta, {5, 0}, {-2, 0},
                   "quadrature variances with inverted molecular phase", var_kinds, 0.5, 200});
    out.push_back({"fig2", omega, delta, {10, 0}, {2, 0},
                   "amplitude-squared squeezing witnesses", amp_kinds, 0.5, 200});
    out.push_back({"fig3", omega, delta, {10, 0}, {2, 0},
                   "second-order antibunching witnesses D_a, D_b, D_ab", d_kinds, 0.5, 200});
    out.push_back({"fig3d", omega, delta, {10, 0}, {-2, 0},
                   "antibunching with inverted molecular phase", d_kinds, 0.5, 200});
    out.push_back({"fig4", omega, delta, {10, 0}, {2, 0},
                   "entanglement witnesses HZ1, HZ2, Duan", ent_kinds, 0.5, 200});
    out.push_back({"fig5", omega, delta, {10, 0}, {2, 0},
                   "higher-order antibunching and entanglement", higher_kinds, 0.5, 200});
    return out;
}

} // namespace

std::span<const Preset> presets() {
    static const std::vector<Preset> all = make_presets();
    return all;
}

const Preset* find_preset(std::string_view name) {
    for (const auto& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

} // namespace ambec
