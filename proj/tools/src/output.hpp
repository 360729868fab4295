#pragma once
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace tricomi::cli {

// Shortest text that round-trips a double: 17 significant digits.
std::string fmt17(double v);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    void row(const std::vector<double>& cells);

private:
    std::ofstream out_;
    std::size_t width_;
};

struct RunContext {
    std::string subcommand;
    std::string out_dir;
    unsigned long long seed = 0;
    std::string path(const std::string& file) const;
    // <out>/<subcommand>.json with config echo, version, seed and a timestamp.
    void write_metadata(const nlohmann::json& config, const nlohmann::json& results) const;
};

extern const char* const kArtifactVersion;

}  // namespace tricomi::cli
