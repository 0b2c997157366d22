// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace viscolab {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Plot-ready table: one header row, numeric rows, written via format_double so
// identical runs produce bit-identical files.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);

// Writes to path.tmp in the same directory, then renames: readers never see a
// partial file.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

// One acceptance-style check inside a run.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct RunManifest {
    std::string preset;
    std::map<std::string, std::string> config_echo;
    std::string started;
    std::string finished;
    std::string version;
    std::vector<std::string> files;
    std::map<std::string, double> metrics;
    std::vector<CheckResult> checks;

    bool passed() const;
};

std::string manifest_json(const RunManifest& m);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);

// UTC timestamp, ISO 8601.
std::string iso_timestamp_now();

// Output root: $VISCOLAB_OUT if set, else ./viscolab_out.
std::filesystem::path default_out_root();

} // namespace viscolab
