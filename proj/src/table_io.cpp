#include "lchi/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lchi/errors.hpp"

namespace lchi {

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    RunConfig c;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value, got '" + line + "'");
        std::string k = line.substr(0, eq);
        std::string v = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            std::size_t a = s.find_first_not_of(" \t");
            std::size_t z = s.find_last_not_of(" \t");
            s = a == std::string::npos ? "" : s.substr(a, z - a + 1);
        };
        trim(k);
        trim(v);
        if (k.empty()) throw config_error(path + ": empty key");
        c.kv_[k] = v;
    }
    return c;
}

void RunConfig::set(const std::string& key, const std::string& value) { kv_[key] = value; }

void RunConfig::apply_override(const std::string& key_eq_value) {
    std::size_t eq = key_eq_value.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("override must be key=value, got '" + key_eq_value + "'");
    kv_[key_eq_value.substr(0, eq)] = key_eq_value.substr(eq + 1);
}

void RunConfig::validate_keys(const std::set<std::string>& allowed,
                              const std::set<std::string>& required) const {
    for (const auto& [k, v] : kv_)
        if (!allowed.count(k)) throw config_error("unknown config key: " + k);
    for (const auto& k : required)
        if (!kv_.count(k)) throw config_error("missing required config key: " + k);
}

bool RunConfig::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string RunConfig::str(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

std::string RunConfig::str_required(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw config_error("missing required config key: " + key);
    return it->second;
}

std::uint64_t RunConfig::u64(const std::string& key, std::uint64_t fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        std::size_t pos = 0;
        double asf = std::stod(it->second, &pos);  // allow 1e6 style
        if (pos != it->second.size() || asf < 0 || asf != std::floor(asf))
            throw std::invalid_argument("");
        return static_cast<std::uint64_t>(asf);
    } catch (const std::exception&) {
        throw config_error("key " + key + ": expected nonnegative integer, got '" +
                           it->second + "'");
    }
}

std::uint64_t RunConfig::u64_required(const std::string& key) const {
    if (!has(key)) throw config_error("missing required config key: " + key);
    return u64(key, 0);
}

double RunConfig::f64(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        std::size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw config_error("key " + key + ": expected number, got '" + it->second + "'");
    }
}

std::vector<double> RunConfig::f64_list(const std::string& key,
                                        const std::vector<double>& fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument("");
            out.push_back(v);
        } catch (const std::exception&) {
            throw config_error("key " + key + ": expected comma-separated numbers, got '" +
                               it->second + "'");
        }
    }
    if (out.empty()) throw config_error("key " + key + ": empty list");
    return out;
}

std::string format_double17(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string cell_csv(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return format_double17(v);
            else if constexpr (std::is_same_v<T, std::string>) return v;
            else return std::to_string(v);
        },
        c);
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return std::isnan(v) ? "null" : format_double17(v);
            else if constexpr (std::is_same_v<T, std::string>)
                return "\"" + json_escape(v) + "\"";
            else
                return std::to_string(v);
        },
        c);
}

}  // namespace

void write_csv(std::ostream& os, const RunConfig& config, const OutputTable& t) {
    for (const auto& [k, v] : config.entries()) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << cell_csv(row[i]);
        os << "\n";
    }
}

void write_json(std::ostream& os, const RunConfig& config, const OutputTable& t) {
    os << "{\n  \"config\": {";
    bool first = true;
    for (const auto& [k, v] : config.entries()) {
        os << (first ? "" : ", ") << "\"" << json_escape(k) << "\": \"" << json_escape(v)
           << "\"";
        first = false;
    }
    os << "},\n  \"rows\": [\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << "    {";
        for (std::size_t i = 0; i < t.rows[r].size(); ++i)
            os << (i ? ", " : "") << "\"" << json_escape(t.columns[i])
               << "\": " << cell_json(t.rows[r][i]);
        os << "}" << (r + 1 < t.rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

void write_table(const std::string& path, const std::string& format,
                 const RunConfig& config, const OutputTable& t) {
    if (format != "csv" && format != "json")
        throw config_error("format must be csv or json, got '" + format + "'");
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!path.empty()) {
        file.open(path, std::ios::binary);  // fixed '\n' endings everywhere
        if (!file) throw error("cannot open output file: " + path);
        os = &file;
    }
    if (format == "csv")
        write_csv(*os, config, t);
    else
        write_json(*os, config, t);
    if (!path.empty() && !file) throw error("write failed: " + path);
}

}  // namespace lchi
