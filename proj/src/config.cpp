#include "estent/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace estent {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(std::istream& is) {
  Config cfg;
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
      current = trim(line.substr(1, line.size() - 2));
      if (current.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
      for (const auto& [name, sec] : cfg.sections_)
        if (name == current)
          throw ConfigError("duplicate section [" + current + "]");
      cfg.sections_.emplace_back(current, Section{});
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (current.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside a section");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    Section& sec = cfg.sections_.back().second;
    for (const auto& [k, v] : sec.items)
      if (k == key)
        throw ConfigError("duplicate key " + current + "." + key);
    sec.items.emplace_back(key, value);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  return parse(f);
}

void Config::dump(std::ostream& os) const {
  for (const auto& [name, sec] : sections_) {
    os << "[" << name << "]\n";
    for (const auto& [k, v] : sec.items) os << k << " = " << v << "\n";
  }
}

const std::string* Config::find(const std::string& section,
                                const std::string& key) const {
  for (const auto& [name, sec] : sections_) {
    if (name != section) continue;
    for (const auto& [k, v] : sec.items)
      if (k == key) {
        consumed_.insert(section + "." + key);
        return &v;
      }
  }
  return nullptr;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

void Config::note_effective(const std::string& section, const std::string& key,
                            const std::string& value) const {
  effective_[section + "." + key] = value;
}

std::string Config::get_string(const std::string& section,
                               const std::string& key) const {
  const std::string* v = find(section, key);
  if (!v) throw ConfigError("missing required key " + section + "." + key);
  note_effective(section, key, *v);
  return *v;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& def) const {
  const std::string* v = find(section, key);
  note_effective(section, key, v ? *v : def);
  return v ? *v : def;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  std::string s = get_string(section, key);
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + section + "." + key + ": " + s);
  }
}

double Config::get_double(const std::string& section, const std::string& key,
                          double def) const {
  if (!has(section, key)) {
    note_effective(section, key, format_double(def));
    return def;
  }
  return get_double(section, key);
}

long long Config::get_int(const std::string& section, const std::string& key,
                          long long def) const {
  if (!has(section, key)) {
    note_effective(section, key, std::to_string(def));
    return def;
  }
  std::string s = get_string(section, key);
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + section + "." + key + ": " + s);
  }
}

Vec Config::get_vec(const std::string& section, const std::string& key) const {
  std::string s = get_string(section, key);
  std::istringstream is(s);
  std::vector<double> vals;
  double v;
  while (is >> v) vals.push_back(v);
  if (vals.empty() || !is.eof())
    throw ConfigError("bad vector for " + section + "." + key + ": " + s);
  Vec out(static_cast<int>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) out[static_cast<int>(i)] = vals[i];
  return out;
}

bool Config::has_section(const std::string& section) const {
  for (const auto& [name, sec] : sections_)
    if (name == section) return true;
  return false;
}

std::vector<std::pair<std::string, std::string>> Config::section_items(
    const std::string& section) const {
  for (const auto& [name, sec] : sections_) {
    if (name == section) {
      for (const auto& [k, v] : sec.items) consumed_.insert(section + "." + k);
      return sec.items;
    }
  }
  return {};
}

void Config::require_consumed() const {
  for (const auto& [name, sec] : sections_)
    for (const auto& [k, v] : sec.items)
      if (!consumed_.count(name + "." + k))
        throw ConfigError("unknown key " + name + "." + k);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void CsvWriter::provenance(const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) provenance_ += "# " + k + " = " + v + "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw Error("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i)
    rows_ += (i ? "," : "") + cells[i];
  rows_ += "\n";
}

std::string CsvWriter::str() const {
  std::string header;
  for (std::size_t i = 0; i < columns_.size(); ++i)
    header += (i ? "," : "") + columns_[i];
  header += "\n";
  return provenance_ + header + rows_;
}

void CsvWriter::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << str();
}

}  // namespace estent
