#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace tricomi::cli {

namespace {
std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}
}  // namespace

double parse_number(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf") return INFINITY;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError(what + ": not a number: '" + t + "'");
    }
    if (used != t.size() || std::isnan(v)) throw ConfigError(what + ": not a number: '" + t + "'");
    return v;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    const std::string t = trim(text);
    if (t.empty()) return out;
    if (t.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(t);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw ConfigError("range must be start:stop:count");
        const double a = parse_number(parts[0], "range start"), b = parse_number(parts[1], "range stop");
        const double c = parse_number(parts[2], "range count");
        if (c < 2 || c != std::floor(c)) throw ConfigError("range count must be an integer >= 2");
        const int n = static_cast<int>(c);
        for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
        return out;
    }
    std::stringstream ss(t);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_number(p, "list entry"));
    return out;
}

Config::Config(std::vector<KeySpec> schema) : schema_(std::move(schema)) {
    for (const auto& k : schema_) values_[k.key] = k.default_value;
}

void Config::set(const std::string& key, const std::string& value) {
    if (!values_.count(key)) throw ConfigError("unknown config key '" + key + "'");
    values_[key] = trim(value);
}

void Config::load_text(const std::string& text, const std::string& origin) {
    std::stringstream in(text);
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (!values_.count(key))
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": unknown config key '" + key + "'");
        values_[key] = trim(line.substr(eq + 1));
    }
}

void Config::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    load_text(ss.str(), path);
}

bool Config::has(const std::string& key) const {
    auto it = values_.find(key);
    return it != values_.end() && !it->second.empty();
}

std::string Config::str(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
    return it->second;
}

double Config::num(const std::string& key) const { return parse_number(str(key), key); }

long Config::integer(const std::string& key) const {
    const double v = num(key);
    if (v != std::floor(v) || std::abs(v) > 9e15) throw ConfigError(key + ": expected an integer");
    return static_cast<long>(v);
}

bool Config::flag(const std::string& key) const {
    const std::string v = str(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected true or false");
}

std::vector<double> Config::list(const std::string& key) const { return parse_list(str(key)); }

nlohmann::json Config::resolved() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& k : schema_) j[k.key] = values_.at(k.key);
    return j;
}

}  // namespace tricomi::cli
