#include "noma/config.hpp"

#include "noma/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace noma {

namespace {

struct ExperimentName {
    Experiment e;
    const char* brief;
    const char* full;
};

constexpr ExperimentName kNames[] = {
    {Experiment::Fig7, "fig7", "fig7_error_vs_snr"},
    {Experiment::Fig8, "fig8", "fig8_gain_vs_snr"},
    {Experiment::Fig9, "fig9", "fig9_gain_vs_L"},
    {Experiment::Fig10, "fig10", "fig10_gain_vs_pt"},
    {Experiment::Validate, "validate", "validate"},
};

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string_view v)
{
    v = trim(v);
    if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front())
        v = v.substr(1, v.size() - 2);
    return std::string(v);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value)
{
    throw ParameterError("invalid value for '" + std::string(key) + "': " + std::string(value));
}

double to_double(std::string_view key, std::string_view v)
{
    v = trim(v);
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(out))
        bad_value(key, v);
    return out;
}

template <class Int>
Int to_int(std::string_view key, std::string_view v)
{
    v = trim(v);
    // Accept integral values written in float form, e.g. 1e5.
    const double d = to_double(key, v);
    if (d != std::floor(d) || (d < 0.0 && !std::is_signed_v<Int>))
        bad_value(key, v);
    return static_cast<Int>(d);
}

std::vector<std::string_view> to_list(std::string_view key, std::string_view v)
{
    v = trim(v);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        bad_value(key, v);
    v = trim(v.substr(1, v.size() - 2));
    std::vector<std::string_view> items;
    while (!v.empty()) {
        const auto comma = v.find(',');
        items.push_back(trim(v.substr(0, comma)));
        if (items.back().empty())
            bad_value(key, v);
        if (comma == std::string_view::npos)
            break;
        v = trim(v.substr(comma + 1));
    }
    return items;
}

} // namespace

std::string experiment_name(Experiment e)
{
    for (const auto& n : kNames)
        if (n.e == e)
            return n.brief;
    return "unknown";
}

Experiment parse_experiment(std::string_view name)
{
    const std::string v = unquote(name);
    for (const auto& n : kNames)
        if (v == n.brief || v == n.full)
            return n.e;
    throw ParameterError("unknown experiment: " + v);
}

SystemParams ExperimentConfig::system() const
{
    SystemParams p;
    p.mods = {mod_k, mod_n};
    p.samples = L;
    p.r_t = r_t;
    p.p_t = p_t;
    p.eps = eps;
    return p;
}

void ExperimentConfig::validate() const
{
    system().validate();
    if (!(gamma_n > 0.0 && gamma_n < 1.0))
        throw ParameterError("gamma_n must lie in (0, 1)");
    if (K < 2)
        throw ParameterError("K must be at least 2");
    if (!(radius > 1.0))
        throw ParameterError("radius must exceed 1");
    if (trials < 1)
        throw ParameterError("trials must be at least 1");
    if (drops < 1)
        throw ParameterError("drops must be at least 1");
    if (experiment == Experiment::Fig7 || experiment == Experiment::Fig8)
        if (snr_points.empty())
            throw ParameterError("snr_points must not be empty");
    for (int l : l_points)
        if (l < 1 || l % 2 == 0)
            throw ParameterError("l_points must hold positive odd integers");
    for (double p : pt_points)
        if (!(p >= 0.0 && p < 1.0))
            throw ParameterError("pt_points must lie in [0, 1)");
}

ExperimentConfig default_config(Experiment e)
{
    ExperimentConfig c;
    c.experiment = e;
    if (e == Experiment::Fig7) {
        c.L = 1;
        for (int db = 0; db <= 30; ++db)
            c.snr_points.push_back(db);
    } else if (e == Experiment::Fig8) {
        for (int i = 0; i <= 12; ++i)
            c.snr_points.push_back(2.5 * i);
    } else if (e == Experiment::Validate) {
        c.snr_points = {0, 5, 10, 15, 20, 25, 30};
        c.snr_db = 40.0;
    }
    return c;
}

void apply_override(ExperimentConfig& c, std::string_view key_in, std::string_view value)
{
    const std::string key(trim(key_in));
    if (key == "experiment") {
        if (parse_experiment(value) != c.experiment)
            throw ParameterError("config is for a different experiment: " + unquote(value));
    } else if (key == "mod_k") {
        c.mod_k = to_int<int>(key, value);
    } else if (key == "mod_n") {
        c.mod_n = to_int<int>(key, value);
    } else if (key == "gamma_n") {
        c.gamma_n = to_double(key, value);
    } else if (key == "r_t") {
        c.r_t = to_double(key, value);
    } else if (key == "p_t") {
        c.p_t = to_double(key, value);
    } else if (key == "L") {
        c.L = to_int<int>(key, value);
    } else if (key == "K") {
        c.K = to_int<int>(key, value);
    } else if (key == "radius") {
        c.radius = to_double(key, value);
    } else if (key == "trials") {
        c.trials = to_int<std::size_t>(key, value);
    } else if (key == "drops") {
        c.drops = to_int<std::size_t>(key, value);
    } else if (key == "seed") {
        c.seed = to_int<std::uint64_t>(key, value);
    } else if (key == "snr_points") {
        c.snr_points.clear();
        for (auto item : to_list(key, value))
            c.snr_points.push_back(to_double(key, item));
    } else if (key == "snr_db") {
        c.snr_db = to_double(key, value);
    } else if (key == "l_points") {
        c.l_points.clear();
        for (auto item : to_list(key, value))
            c.l_points.push_back(to_int<int>(key, item));
    } else if (key == "pt_points") {
        c.pt_points.clear();
        for (auto item : to_list(key, value))
            c.pt_points.push_back(to_double(key, item));
    } else if (key == "eps") {
        c.eps = to_double(key, value);
    } else if (key == "threads") {
        c.threads = to_int<unsigned>(key, value);
    } else {
        throw ParameterError("unknown config key: " + key);
    }
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = line;
        if (const auto hash = s.find('#'); hash != std::string_view::npos)
            s = s.substr(0, hash);
        s = trim(s);
        if (s.empty())
            continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ParameterError("line " + std::to_string(lineno) + ": expected key = value");
        apply_override(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
}

std::pair<std::string, std::string> split_override(std::string_view kv)
{
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ParameterError("override must be key=value: " + std::string(kv));
    return {std::string(trim(kv.substr(0, eq))), std::string(trim(kv.substr(eq + 1)))};
}

ExperimentConfig load_config(Experiment e, const std::string& path, const std::vector<std::string>& overrides)
{
    auto cfg = default_config(e);
    if (!path.empty()) {
        std::ifstream f(path);
        if (!f)
            throw ParameterError("cannot read config file: " + path);
        std::stringstream buf;
        buf << f.rdbuf();
        apply_config_text(cfg, buf.str());
    }
    for (const auto& o : overrides) {
        const auto [k, v] = split_override(o);
        apply_override(cfg, k, v);
    }
    cfg.validate();
    return cfg;
}

} // namespace noma
