#include "output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>

#include "config.hpp"

namespace tricomi::cli {

#ifndef TRICOMI_VERSION
#define TRICOMI_VERSION "0.0.0"
#endif
const char* const kArtifactVersion = TRICOMI_VERSION;

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path), width_(header.size()) {
    if (!out_) throw ConfigError("cannot write '" + path + "'");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("CSV row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& cells) {
    std::vector<std::string> s;
    for (double v : cells) s.push_back(fmt17(v));
    row(s);
}

std::string RunContext::path(const std::string& file) const {
    std::filesystem::create_directories(out_dir);
    return (std::filesystem::path(out_dir) / file).string();
}

void RunContext::write_metadata(const nlohmann::json& config, const nlohmann::json& results) const {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    nlohmann::json meta{{"subcommand", subcommand},
                        {"artifact_version", kArtifactVersion},
                        {"seed", seed},
                        {"config", config},
                        {"results", results},
                        {"timestamp", stamp}};
    std::ofstream f(path(subcommand + ".json"));
    if (!f) throw ConfigError("cannot write metadata in '" + out_dir + "'");
    f << meta.dump(2) << '\n';
}

}  // namespace tricomi::cli
