#pragma once
#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"

namespace tricomi::cli {

struct Command {
    std::string name;
    std::string summary;
    std::vector<KeySpec> schema;
    nlohmann::json (*run)(const Config&, const RunContext&);
};

const std::vector<Command>& commands();

}  // namespace tricomi::cli
