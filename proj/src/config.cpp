#include "sqg/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "sqg/report_io.hpp"

namespace sqg {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct Entry {
    std::string value;
    int line;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

class Parser {
public:
    Parser(const std::string& text, const std::string& origin)
        : origin_(origin)
    {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        std::string section;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#')
                continue;
            if (t.front() == '[') {
                if (t.back() != ']')
                    fail(lineno, "malformed section header");
                section = trim(t.substr(1, t.size() - 2));
                if (section != "model" && section != "grid" && section != "noise"
                    && section != "init" && section != "output"
                    && section != "experiment")
                    fail(lineno, "unknown section [" + section + "]");
                sections_[section]; // mark as present
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                fail(lineno, "expected key = value");
            if (section.empty())
                fail(lineno, "key outside of any section");
            const std::string key = trim(t.substr(0, eq));
            const std::string value = trim(t.substr(eq + 1));
            if (key.empty() || value.empty())
                fail(lineno, "empty key or value");
            auto& sec = sections_[section];
            if (sec.count(key))
                fail(lineno, "duplicate key '" + key + "'");
            sec[key] = {value, lineno};
        }
    }

    bool has_section(const std::string& name) const
    {
        return sections_.count(name) != 0;
    }

    void require_section(const std::string& name) const
    {
        if (!has_section(name))
            fail(0, "missing required section [" + name + "]");
    }

    const Entry* find(const std::string& section, const std::string& key)
    {
        auto sec = sections_.find(section);
        if (sec == sections_.end())
            return nullptr;
        auto it = sec->second.find(key);
        if (it == sec->second.end())
            return nullptr;
        it->second.used = true;
        return &it->second;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback, bool required = false)
    {
        const Entry* e = find(section, key);
        if (!e) {
            if (required)
                fail(0, "missing key '" + key + "' in [" + section + "]");
            return fallback;
        }
        return e->value;
    }

    double get_double(const std::string& section, const std::string& key,
                      double fallback, bool required = false)
    {
        const Entry* e = find(section, key);
        if (!e) {
            if (required)
                fail(0, "missing key '" + key + "' in [" + section + "]");
            return fallback;
        }
        return parse_double(e->value, e->line);
    }

    int64_t get_int(const std::string& section, const std::string& key,
                    int64_t fallback, bool required = false)
    {
        const Entry* e = find(section, key);
        if (!e) {
            if (required)
                fail(0, "missing key '" + key + "' in [" + section + "]");
            return fallback;
        }
        return parse_int(e->value, e->line);
    }

    bool get_switch(const std::string& section, const std::string& key,
                    bool fallback)
    {
        const Entry* e = find(section, key);
        if (!e)
            return fallback;
        if (e->value == "on" || e->value == "true")
            return true;
        if (e->value == "off" || e->value == "false")
            return false;
        fail(e->line, "expected on/off for '" + key + "'");
        return fallback;
    }

    std::vector<int> get_int_list(const std::string& section, const std::string& key)
    {
        const Entry* e = find(section, key);
        std::vector<int> out;
        if (!e)
            return out;
        for (const auto& item : split(e->value))
            out.push_back(int(parse_int(item, e->line)));
        return out;
    }

    std::vector<double> get_double_list(const std::string& section,
                                        const std::string& key)
    {
        const Entry* e = find(section, key);
        std::vector<double> out;
        if (!e)
            return out;
        for (const auto& item : split(e->value))
            out.push_back(parse_double(item, e->line));
        return out;
    }

    // Any key outside the schema is a typo; checked before value parsing so
    // the misspelling is what gets reported.
    void reject_unknown(const std::map<std::string, std::vector<std::string>>& known) const
    {
        for (const auto& [section, entries] : sections_) {
            const auto& allowed = known.at(section);
            for (const auto& [key, entry] : entries) {
                bool ok = false;
                for (const auto& k : allowed)
                    ok = ok || k == key;
                if (!ok)
                    fail(entry.line, "unknown key '" + key + "' in [" + section + "]");
            }
        }
    }

    [[noreturn]] void fail(int line, const std::string& message) const
    {
        if (line > 0)
            throw ConfigError(origin_ + ":" + std::to_string(line) + ": " + message);
        throw ConfigError(origin_ + ": " + message);
    }

private:
    static std::vector<std::string> split(const std::string& value)
    {
        std::vector<std::string> items;
        std::string cur;
        std::istringstream in(value);
        while (std::getline(in, cur, ','))
            items.push_back(trim(cur));
        return items;
    }

    double parse_double(const std::string& text, int line) const
    {
        double v = 0.0;
        const char* begin = text.data();
        const char* end = begin + text.size();
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc() || res.ptr != end)
            fail(line, "not a number: '" + text + "'");
        return v;
    }

    int64_t parse_int(const std::string& text, int line) const
    {
        int64_t v = 0;
        const char* begin = text.data();
        const char* end = begin + text.size();
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc() || res.ptr != end)
            fail(line, "not an integer: '" + text + "'");
        return v;
    }

    std::string origin_;
    std::map<std::string, Section> sections_;
};

InitSpec parse_init_kind(Parser& p, const std::string& value, int line)
{
    InitSpec spec;
    if (value == "zero") {
        spec.kind = InitSpec::Kind::Zero;
        return spec;
    }
    const auto colon = value.find(':');
    const std::string head = value.substr(0, colon);
    const std::string tail = colon == std::string::npos ? "" : value.substr(colon + 1);
    if (head == "analytic" && !tail.empty()) {
        spec.kind = InitSpec::Kind::Analytic;
        spec.name = tail;
        return spec;
    }
    if (head == "snapshot" && !tail.empty()) {
        spec.kind = InitSpec::Kind::Snapshot;
        spec.name = tail;
        return spec;
    }
    if (head == "random_h1" && !tail.empty()) {
        spec.kind = InitSpec::Kind::RandomH1;
        double norm = 0.0;
        const char* begin = tail.data();
        const auto res = std::from_chars(begin, begin + tail.size(), norm);
        if (res.ec != std::errc() || res.ptr != begin + tail.size() || !(norm > 0.0))
            p.fail(line, "random_h1 needs a positive norm");
        spec.h1_norm = norm;
        return spec;
    }
    p.fail(line, "unknown init kind '" + value + "'");
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin)
{
    Parser p(text, origin);
    p.reject_unknown({
        {"model", {"alpha", "kappa", "nonlinear"}},
        {"grid", {"N", "dt", "T"}},
        {"noise", {"variant", "g0", "decay", "band_limit", "sigma", "s", "q_min", "q_max"}},
        {"init", {"kind", "seed"}},
        {"output", {"directory", "cadence", "snapshots"}},
        {"experiment", {"name", "resolutions", "p", "s", "t", "m", "T_long",
                        "burn_in", "delta", "t_grid"}},
    });
    for (const char* required : {"model", "grid", "noise", "init"})
        p.require_section(required);

    RunConfig cfg;

    // [model]
    {
        const double alpha = p.get_double("model", "alpha", 0.0, true);
        const double kappa = p.get_double("model", "kappa", 0.0, true);
        const Entry* e = p.find("model", "alpha"); // for the line number
        if (!(alpha > 0.0 && alpha < 1.0))
            p.fail(e ? e->line : 0, "alpha must lie in the open interval (0,1)");
        if (!(kappa > 0.0))
            p.fail(0, "kappa must be positive");
        cfg.sim.params.alpha = alpha;
        cfg.sim.params.kappa = kappa;
        cfg.sim.nonlinear = p.get_switch("model", "nonlinear", true);
    }

    // [grid]
    {
        const int64_t n = p.get_int("grid", "N", 0, true);
        if (n < 4 || n % 2 != 0)
            p.fail(0, "N must be an even integer >= 4");
        cfg.sim.resolution = int(n);
        cfg.sim.dt = p.get_double("grid", "dt", 0.0, true);
        cfg.sim.horizon = p.get_double("grid", "T", 0.0, true);
        if (!(cfg.sim.dt > 0.0))
            p.fail(0, "dt must be positive");
        if (cfg.sim.horizon < 0.0)
            p.fail(0, "T must be >= 0");
    }

    // [noise]
    {
        const std::string variant = p.get_string("noise", "variant", "", true);
        auto forbid = [&](const char* key) {
            if (const Entry* e = p.find("noise", key))
                p.fail(e->line, std::string("key '") + key
                                    + "' does not apply to variant " + variant);
        };
        if (variant == "none") {
            cfg.sim.noise.kind = NoiseSpec::Kind::None;
            for (const char* k : {"g0", "decay", "band_limit", "sigma", "s",
                                  "q_min", "q_max"})
                forbid(k);
        } else if (variant == "additive") {
            cfg.sim.noise.kind = NoiseSpec::Kind::Additive;
            cfg.sim.noise.g0 = p.get_double("noise", "g0", 1.0);
            cfg.sim.noise.decay = p.get_double("noise", "decay", 2.0);
            cfg.sim.noise.band_limit = int(p.get_int("noise", "band_limit", 0));
            if (cfg.sim.noise.g0 < 0.0)
                p.fail(0, "g0 must be >= 0");
            for (const char* k : {"sigma", "s", "q_min", "q_max"})
                forbid(k);
        } else if (variant == "multiplicative") {
            cfg.sim.noise.kind = NoiseSpec::Kind::Multiplicative;
            cfg.sim.noise.sigma = p.get_double("noise", "sigma", 1.0);
            if (cfg.sim.noise.sigma < 0.0)
                p.fail(0, "sigma must be >= 0");
            for (const char* k : {"g0", "decay", "band_limit", "s", "q_min", "q_max"})
                forbid(k);
        } else if (variant == "ergodic") {
            cfg.sim.noise.kind = NoiseSpec::Kind::Ergodic;
            cfg.sim.noise.s = p.get_double("noise", "s", 1.0);
            cfg.sim.noise.q_min = p.get_double("noise", "q_min", 1.0);
            cfg.sim.noise.q_max = p.get_double("noise", "q_max", cfg.sim.noise.q_min);
            if (!(cfg.sim.noise.s >= 1.0))
                p.fail(0, "ergodic noise needs s >= 1");
            if (!(cfg.sim.noise.q_min > 0.0)
                || !(cfg.sim.noise.q_min <= cfg.sim.noise.q_max))
                p.fail(0, "ergodic noise needs 0 < q_min <= q_max");
            for (const char* k : {"g0", "decay", "band_limit", "sigma"})
                forbid(k);
        } else {
            const Entry* e = p.find("noise", "variant");
            p.fail(e ? e->line : 0, "unknown noise variant '" + variant + "'");
        }
    }

    // [init]
    {
        const Entry* e = p.find("init", "kind");
        if (!e)
            p.fail(0, "missing key 'kind' in [init]");
        cfg.sim.init = parse_init_kind(p, e->value, e->line);
        cfg.sim.seed = uint64_t(p.get_int("init", "seed", 0));
    }

    // [output]
    cfg.output.directory = p.get_string("output", "directory", "out");
    cfg.output.cadence = int(p.get_int("output", "cadence", 1));
    cfg.output.snapshots = int(p.get_int("output", "snapshots", 0));
    if (cfg.output.cadence < 1)
        p.fail(0, "cadence must be >= 1");
    if (cfg.output.snapshots < 0)
        p.fail(0, "snapshots must be >= 0");
    cfg.sim.cadence = cfg.output.cadence;

    // [experiment]
    cfg.experiment.name = p.get_string("experiment", "name", "");
    cfg.experiment.resolutions = p.get_int_list("experiment", "resolutions");
    cfg.experiment.p = p.get_double("experiment", "p", 4.0);
    cfg.experiment.s = p.get_double("experiment", "s", 0.5);
    cfg.experiment.t = p.get_double("experiment", "t", 0.5);
    cfg.experiment.m = int(p.get_int("experiment", "m", 2000));
    cfg.experiment.t_long = p.get_double("experiment", "T_long", 200.0);
    cfg.experiment.burn_in = p.get_double("experiment", "burn_in", -1.0);
    cfg.experiment.delta = p.get_double("experiment", "delta", 0.0);
    cfg.experiment.t_grid = p.get_double_list("experiment", "t_grid");

    cfg.sim.validate();
    return cfg;
}

RunConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open configuration file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

std::string config_digest(const RunConfig& cfg)
{
    std::ostringstream canon;
    auto put = [&](const char* key, const std::string& value) {
        canon << key << '=' << value << '\n';
    };
    put("model.alpha", format_double(cfg.sim.params.alpha));
    put("model.kappa", format_double(cfg.sim.params.kappa));
    put("model.nonlinear", cfg.sim.nonlinear ? "on" : "off");
    put("grid.N", std::to_string(cfg.sim.resolution));
    put("grid.dt", format_double(cfg.sim.dt));
    put("grid.T", format_double(cfg.sim.horizon));
    put("noise.kind", std::to_string(int(cfg.sim.noise.kind)));
    put("noise.g0", format_double(cfg.sim.noise.g0));
    put("noise.decay", format_double(cfg.sim.noise.decay));
    put("noise.band_limit", std::to_string(cfg.sim.noise.band_limit));
    put("noise.sigma", format_double(cfg.sim.noise.sigma));
    put("noise.s", format_double(cfg.sim.noise.s));
    put("noise.q_min", format_double(cfg.sim.noise.q_min));
    put("noise.q_max", format_double(cfg.sim.noise.q_max));
    put("init.kind", std::to_string(int(cfg.sim.init.kind)));
    put("init.name", cfg.sim.init.name);
    put("init.h1_norm", format_double(cfg.sim.init.h1_norm));
    put("init.seed", std::to_string(cfg.sim.seed));
    put("output.cadence", std::to_string(cfg.output.cadence));
    put("output.snapshots", std::to_string(cfg.output.snapshots));
    put("experiment.name", cfg.experiment.name);
    {
        std::string list;
        for (int n : cfg.experiment.resolutions)
            list += std::to_string(n) + ",";
        put("experiment.resolutions", list);
    }
    put("experiment.p", format_double(cfg.experiment.p));
    put("experiment.s", format_double(cfg.experiment.s));
    put("experiment.t", format_double(cfg.experiment.t));
    put("experiment.m", std::to_string(cfg.experiment.m));
    put("experiment.T_long", format_double(cfg.experiment.t_long));
    put("experiment.burn_in", format_double(cfg.experiment.burn_in));
    put("experiment.delta", format_double(cfg.experiment.delta));
    {
        std::string list;
        for (double t : cfg.experiment.t_grid)
            list += format_double(t) + ",";
        put("experiment.t_grid", list);
    }

    // FNV-1a, 64 bit.
    const std::string text = canon.str();
    uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001b3ull;
    }
    char hex[17];
    for (int i = 15; i >= 0; --i) {
        hex[i] = "0123456789abcdef"[hash & 0xF];
        hash >>= 4;
    }
    hex[16] = '\0';
    return hex;
}

} // namespace sqg
