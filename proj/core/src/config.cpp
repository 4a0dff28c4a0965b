#include "riskmin/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "riskmin/errors.hpp"

namespace riskmin {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void fail(std::string_view source, int line, const std::string& what) {
  throw ConfigError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

class Parsed {
 public:
  Parsed(std::map<std::string, Entry, std::less<>> entries, std::string source)
      : entries_(std::move(entries)), source_(std::move(source)) {}

  const Entry& get(std::string_view key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      throw ConfigError(source_ + ": missing required key '" + std::string(key) + "'");
    }
    used_.emplace(it->first);
    return it->second;
  }

  double get_double(std::string_view key) {
    const Entry& e = get(key);
    const std::string_view v = e.value;
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
      fail(source_, e.line, "expected a number for '" + std::string(key) + "', got '" +
                                std::string(v) + "'");
    }
    return out;
  }

  int get_int(std::string_view key) {
    const Entry& e = get(key);
    const std::string_view v = e.value;
    int out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
      fail(source_, e.line, "expected an integer for '" + std::string(key) + "', got '" +
                                std::string(v) + "'");
    }
    return out;
  }

  std::uint64_t get_u64(std::string_view key) {
    const Entry& e = get(key);
    const std::string_view v = e.value;
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
      fail(source_, e.line, "expected an unsigned 64-bit integer for '" + std::string(key) +
                                "', got '" + std::string(v) + "'");
    }
    return out;
  }

  std::vector<double> get_double_list(std::string_view key) {
    const Entry& e = get(key);
    std::vector<double> out;
    std::string_view rest = e.value;
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      const std::string_view item =
          trim(comma == std::string_view::npos ? rest : rest.substr(0, comma));
      double x = 0.0;
      const auto res = std::from_chars(item.data(), item.data() + item.size(), x);
      if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
        fail(source_, e.line, "expected a comma-separated number list for '" + std::string(key) +
                                  "', got '" + std::string(item) + "'");
      }
      out.push_back(x);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (out.empty()) {
      fail(source_, e.line, "'" + std::string(key) + "' must list at least one value");
    }
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, entry] : entries_) {
      if (!used_.count(key)) {
        fail(source_, entry.line, "unknown key '" + key + "'");
      }
    }
  }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
  std::set<std::string> used_;
  std::string source_;
};

}  // namespace

ScenarioConfig parse_config_text(std::string_view text, std::string_view source_name) {
  std::map<std::string, Entry, std::less<>> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(source_name, line_no, "expected key=value, got '" + std::string(line) + "'");
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) fail(source_name, line_no, "empty key");
    if (entries.count(key)) {
      fail(source_name, line_no, "duplicate key '" + key + "'");
    }
    entries.emplace(key, Entry{value, line_no});
  }

  Parsed p(std::move(entries), std::string(source_name));
  ScenarioConfig cfg;
  cfg.n_assets = p.get_int("n_assets");
  cfg.n_periods = p.get_int("n_periods");
  cfg.cost_coefficient = p.get_double("cost_coefficient");
  cfg.return_grid = p.get_double_list("return_grid");
  cfg.pareto_r.exponent = p.get_double("pareto_r_exponent");
  cfg.pareto_r.lower = p.get_double("pareto_r_lower");
  cfg.pareto_r.upper = p.get_double("pareto_r_upper");
  cfg.pareto_h.exponent = p.get_double("pareto_h_exponent");
  cfg.pareto_h.lower = p.get_double("pareto_h_lower");
  cfg.pareto_h.upper = p.get_double("pareto_h_upper");
  cfg.n_trials = p.get_int("n_trials");
  cfg.master_seed = p.get_u64("master_seed");
  p.reject_unknown();

  try {
    cfg.validate();
  } catch (const InvalidSpecError& e) {
    throw ConfigError(std::string(source_name) + ": " + e.what());
  }
  return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

}  // namespace riskmin
