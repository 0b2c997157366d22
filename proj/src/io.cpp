// SPDX-License-Identifier: Apache-2.0
#include "viscolab/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace viscolab {

std::string format_double(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table)
{
    std::string text;
    for (size_t j = 0; j < table.header.size(); ++j) {
        if (j) text += ',';
        text += table.header[j];
    }
    text += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw std::invalid_argument("write_csv: row width does not match header");
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) text += ',';
            text += format_double(row[j]);
        }
        text += '\n';
    }
    write_text_atomic(path, text);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("write_text_atomic: cannot open " + tmp.string());
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        f.flush();
        if (!f) throw std::runtime_error("write_text_atomic: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

bool RunManifest::passed() const
{
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string manifest_json(const RunManifest& m)
{
    nlohmann::json j;
    j["preset"] = m.preset;
    j["config"] = m.config_echo;
    j["started"] = m.started;
    j["finished"] = m.finished;
    j["version"] = m.version;
    j["files"] = m.files;
    j["metrics"] = nlohmann::json::object();
    for (const auto& [k, v] : m.metrics) j["metrics"][k] = v;
    j["checks"] = nlohmann::json::array();
    for (const CheckResult& c : m.checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["pass"] = m.passed();
    return j.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m)
{
    write_text_atomic(path, manifest_json(m));
}

std::string iso_timestamp_now()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path default_out_root()
{
    if (const char* env = std::getenv("VISCOLAB_OUT"); env && *env) return env;
    return "viscolab_out";
}

} // namespace viscolab
