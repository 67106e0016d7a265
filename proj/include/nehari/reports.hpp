#pragma once

#include <string>
#include <vector>

namespace nehari {

/// Deterministic CSV writer: fixed %.17g formatting, LF line endings, no
/// locale dependence, so identical runs are byte-identical.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string format_double(double x);
void write_csv(const std::string& path, const CsvTable& table);

/// Two-column plot data (x y per line, space separated).
void write_plot_data(const std::string& path, const std::vector<double>& x,
                     const std::vector<double>& y);

void write_text_file(const std::string& path, const std::string& content);

/// Run manifest: configuration echo, version, timestamps, per-task status
/// and the emitted file index. Written once at the end of a run.
struct RunManifest {
    std::string config_echo;
    std::string version;
    std::string started;
    std::string finished;
    std::vector<std::pair<std::string, std::string>> tasks; ///< name, status
    std::vector<std::string> files;
    double delta_h = 0.0;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

std::string iso_timestamp();

} // namespace nehari
