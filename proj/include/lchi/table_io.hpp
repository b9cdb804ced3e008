#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace lchi {

// Line-oriented key=value config plus command-line overrides. Unknown keys
// are rejected; the fully-resolved map is echoed into every output header.
class RunConfig {
  public:
    RunConfig() = default;
    static RunConfig from_file(const std::string& path);
    void set(const std::string& key, const std::string& value);
    void apply_override(const std::string& key_eq_value);
    void validate_keys(const std::set<std::string>& allowed,
                       const std::set<std::string>& required) const;

    bool has(const std::string& key) const;
    std::string str(const std::string& key, const std::string& fallback) const;
    std::string str_required(const std::string& key) const;
    std::uint64_t u64(const std::string& key, std::uint64_t fallback) const;
    std::uint64_t u64_required(const std::string& key) const;
    double f64(const std::string& key, double fallback) const;
    std::vector<double> f64_list(const std::string& key,
                                 const std::vector<double>& fallback) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

// Uniform table for CSV/JSON emission. Floats are serialized with 17
// significant digits so parsing an emitted file reproduces the in-memory
// values exactly; NaN becomes "nan" in CSV and null in JSON.
using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> r) { rows.push_back(std::move(r)); }
};

std::string format_double17(double v);

void write_csv(std::ostream& os, const RunConfig& config, const OutputTable& t);
void write_json(std::ostream& os, const RunConfig& config, const OutputTable& t);

// format = "csv" | "json"; path empty -> stdout
void write_table(const std::string& path, const std::string& format,
                 const RunConfig& config, const OutputTable& t);

}  // namespace lchi
