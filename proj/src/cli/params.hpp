#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dresslat::cli {

// Strict reader over one JSON object: unknown keys and wrongly typed values
// raise ConfigError naming the offending path.
class Params {
public:
    Params(const nlohmann::json& j, std::string context, std::initializer_list<const char*> allowed);

    bool has(const char* key) const { return j_.contains(key); }
    double number(const char* key) const;
    double number(const char* key, double fallback) const;
    double nonnegative(const char* key) const;
    double nonnegative(const char* key, double fallback) const;
    int integer(const char* key, int fallback) const;
    bool flag(const char* key, bool fallback) const;
    std::string string(const char* key, const std::string& fallback) const;
    std::vector<double> numbers(const char* key) const;
    const nlohmann::json& object(const char* key) const;

private:
    std::string where(const char* key) const;

    const nlohmann::json& j_;
    std::string context_;
};

}  // namespace dresslat::cli
