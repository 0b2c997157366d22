// SPDX-License-Identifier: Apache-2.0
#include "viscolab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "viscolab/errors.hpp"

namespace viscolab {

namespace {

struct Violations {
    std::vector<std::string> items;

    void add(const std::string& s) { items.push_back(s); }

    void raise_if_any(const std::string& source) const
    {
        if (items.empty()) return;
        std::string msg = "config error in " + source + ":";
        for (const auto& s : items) msg += "\n  - " + s;
        throw ConfigError(msg);
    }
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out)
{
    const char* b = s.data();
    const char* e = b + s.size();
    const auto r = std::from_chars(b, e, out);
    return r.ec == std::errc() && r.ptr == e;
}

bool parse_int(const std::string& s, int& out)
{
    const char* b = s.data();
    const char* e = b + s.size();
    const auto r = std::from_chars(b, e, out);
    return r.ec == std::errc() && r.ptr == e;
}

bool parse_u64(const std::string& s, std::uint64_t& out)
{
    const char* b = s.data();
    const char* e = b + s.size();
    const auto r = std::from_chars(b, e, out);
    return r.ec == std::errc() && r.ptr == e;
}

struct Parser {
    ExperimentConfig cfg;
    Violations bad;

    void set_double(const std::string& where, const std::string& val, double& dst)
    {
        double v;
        if (parse_double(val, v))
            dst = v;
        else
            bad.add(where + ": not a number: '" + val + "'");
    }

    void key(const std::string& section, const std::string& k, const std::string& v, int line)
    {
        const std::string where = "line " + std::to_string(line) + ": " + section + "." + k;

        if (section == "params") {
            if (k == "nu") return set_double(where, v, cfg.params.nu);
            if (k == "nu_prime") return set_double(where, v, cfg.params.nu_prime);
            if (k == "beta") return set_double(where, v, cfg.params.beta);
            if (k == "gamma") return set_double(where, v, cfg.params.gamma);
            if (k == "pressure_quadratic")
                return set_double(where, v, cfg.params.pressure_quadratic);
        } else if (section == "data") {
            if (k == "family") {
                cfg.data.family = v;
                return;
            }
            if (k == "amp_phi") return set_double(where, v, cfg.data.amp_phi);
            if (k == "amp_w") return set_double(where, v, cfg.data.amp_w);
            if (k == "sigma") return set_double(where, v, cfg.data.sigma);
            if (k == "epsilon") return set_double(where, v, cfg.data.epsilon);
            if (k == "k_lo") return set_double(where, v, cfg.data.k_lo);
            if (k == "k_hi") return set_double(where, v, cfg.data.k_hi);
            if (k == "seed") {
                if (!parse_u64(v, cfg.data.seed))
                    bad.add(where + ": not an unsigned integer: '" + v + "'");
                return;
            }
        } else if (section == "run") {
            if (k == "preset") {
                cfg.preset = v;
                return;
            }
            if (k == "backend") {
                cfg.backend = v;
                return;
            }
            if (k == "t_lo") return set_double(where, v, cfg.schedule.t_lo);
            if (k == "t_hi") return set_double(where, v, cfg.schedule.t_hi);
            if (k == "samples") {
                if (!parse_int(v, cfg.schedule.samples))
                    bad.add(where + ": not an integer: '" + v + "'");
                return;
            }
            if (k == "T") return set_double(where, v, cfg.schedule.T);
            if (k == "dt") return set_double(where, v, cfg.schedule.dt);
            if (k == "threads") {
                if (!parse_int(v, cfg.threads))
                    bad.add(where + ": not an integer: '" + v + "'");
                return;
            }
        } else if (section == "grid") {
            if (k == "n") {
                if (!parse_int(v, cfg.grid.n)) bad.add(where + ": not an integer: '" + v + "'");
                return;
            }
            if (k == "r") return set_double(where, v, cfg.grid.r);
        } else if (section == "tolerances") {
            double t;
            if (parse_double(v, t))
                cfg.tolerances[k] = t;
            else
                bad.add(where + ": not a number: '" + v + "'");
            return;
        } else if (section == "output") {
            if (k == "dir") {
                cfg.out_dir = v;
                return;
            }
        }
        bad.add(where + ": unknown key");
    }
};

void check_values(const ExperimentConfig& cfg, Violations& bad)
{
    try {
        make_params(cfg.params.nu, cfg.params.nu_prime, cfg.params.beta, cfg.params.gamma,
                    cfg.params.pressure_quadratic);
    } catch (const std::invalid_argument& e) {
        bad.add(std::string("params: ") + e.what());
    }

    if (cfg.data.family != "monopole" && cfg.data.family != "gaussian-control" &&
        cfg.data.family != "band")
        bad.add("data.family: unknown family '" + cfg.data.family +
                "' (monopole | gaussian-control | band)");
    if (!(cfg.data.sigma > 0.0)) bad.add("data.sigma: must be positive");
    if (!(cfg.data.epsilon > 0.0)) bad.add("data.epsilon: must be positive");
    if (!(cfg.data.k_lo >= 0.0 && cfg.data.k_hi > cfg.data.k_lo))
        bad.add("data.k_lo/k_hi: need 0 <= k_lo < k_hi");

    if (cfg.backend != "radial" && cfg.backend != "grid" && cfg.backend != "nonlinear")
        bad.add("run.backend: unknown backend '" + cfg.backend +
                "' (radial | grid | nonlinear)");
    if (!(cfg.schedule.t_lo >= 0.0 && cfg.schedule.t_hi > cfg.schedule.t_lo))
        bad.add("run.t_lo/t_hi: need 0 <= t_lo < t_hi");
    if (cfg.schedule.samples < 2) bad.add("run.samples: need at least 2");
    if (!(cfg.schedule.T > 0.0)) bad.add("run.T: must be positive");
    if (!(cfg.schedule.dt > 0.0 && cfg.schedule.dt <= cfg.schedule.T))
        bad.add("run.dt: need 0 < dt <= T");
    if (cfg.threads < 1) bad.add("run.threads: must be >= 1");

    const int n = cfg.grid.n;
    if (n < 8 || (n & (n - 1)) != 0) bad.add("grid.n: must be a power of two, >= 8");
    if (!(cfg.grid.r > 0.0)) bad.add("grid.r: must be positive");

    for (const auto& [k, v] : cfg.tolerances)
        if (!(v > 0.0)) bad.add("tolerances." + k + ": must be positive");
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& source)
{
    Parser ps;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (const auto h = s.find('#'); h != std::string::npos) s.erase(h);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') {
                ps.bad.add("line " + std::to_string(line) + ": unterminated section header");
                continue;
            }
            section = trim(s.substr(1, s.size() - 2));
            if (section != "params" && section != "data" && section != "run" &&
                section != "grid" && section != "tolerances" && section != "output") {
                ps.bad.add("line " + std::to_string(line) + ": unknown section [" + section +
                           "]");
                section.clear();
            }
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            ps.bad.add("line " + std::to_string(line) + ": expected key = value");
            continue;
        }
        const std::string k = trim(s.substr(0, eq));
        const std::string v = trim(s.substr(eq + 1));
        if (k.empty() || v.empty()) {
            ps.bad.add("line " + std::to_string(line) + ": empty key or value");
            continue;
        }
        if (section.empty()) {
            ps.bad.add("line " + std::to_string(line) + ": key outside any section");
            continue;
        }
        ps.key(section, k, v, line);
    }

    check_values(ps.cfg, ps.bad);
    ps.bad.raise_if_any(source);
    return ps.cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("config error: cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

void validate_config(const ExperimentConfig& cfg)
{
    Violations bad;
    check_values(cfg, bad);
    bad.raise_if_any("configuration");
}

} // namespace viscolab
