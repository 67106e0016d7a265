#include "nehari/reports.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace nehari {

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const std::string& path, const CsvTable& table)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
}

void write_plot_data(const std::string& path, const std::vector<double>& x,
                     const std::vector<double>& y)
{
    if (x.size() != y.size()) throw std::invalid_argument("plot data size mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (std::size_t i = 0; i < x.size(); ++i)
        out << format_double(x[i]) << ' ' << format_double(y[i]) << '\n';
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

void write_manifest(const std::string& path, const RunManifest& m)
{
    nlohmann::ordered_json j;
    j["version"] = m.version;
    j["started"] = m.started;
    j["finished"] = m.finished;
    j["delta_h"] = m.delta_h;
    nlohmann::ordered_json tasks = nlohmann::ordered_json::object();
    for (const auto& [name, status] : m.tasks) tasks[name] = status;
    j["tasks"] = tasks;
    j["files"] = m.files;
    try {
        j["config"] = nlohmann::ordered_json::parse(m.config_echo);
    } catch (...) {
        j["config"] = m.config_echo;
    }
    write_text_file(path, j.dump(2) + "\n");
}

std::string iso_timestamp()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace nehari
