#pragma once
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "tricomi/errors.hpp"

namespace tricomi::cli {

struct ConfigError : DomainError {
    using DomainError::DomainError;
};

struct KeySpec {
    std::string key;
    std::string default_value;
    std::string help;
};

// Flat "section.key = value" store with a fixed schema; unknown keys are rejected.
class Config {
public:
    explicit Config(std::vector<KeySpec> schema);

    // Grammar: one "key = value" per line, '#' starts a comment, blank lines ignored.
    void load_file(const std::string& path);
    void load_text(const std::string& text, const std::string& origin = "<text>");
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const;
    std::string str(const std::string& key) const;
    double num(const std::string& key) const;
    long integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::vector<double> list(const std::string& key) const;

    const std::vector<KeySpec>& schema() const { return schema_; }
    nlohmann::json resolved() const;

private:
    std::vector<KeySpec> schema_;
    std::map<std::string, std::string> values_;
};

// "a,b,c" or "start:stop:count" (inclusive, count >= 2).
std::vector<double> parse_list(const std::string& text);
double parse_number(const std::string& text, const std::string& what);

}  // namespace tricomi::cli
