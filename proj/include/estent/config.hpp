#ifndef ESTENT_CONFIG_HPP
#define ESTENT_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "estent/common.hpp"

namespace estent {

// Flat sectioned key=value text format:
//   # comment
//   [section]
//   key = value
// Values keep their raw text; vectors are space-separated numbers.
class Config {
 public:
  static Config parse(std::istream& is);
  static Config parse_file(const std::string& path);
  void dump(std::ostream& os) const;

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& def) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    double def) const;
  long long get_int(const std::string& section, const std::string& key,
                    long long def) const;
  Vec get_vec(const std::string& section, const std::string& key) const;

  bool has_section(const std::string& section) const;
  std::vector<std::pair<std::string, std::string>> section_items(
      const std::string& section) const;

  // Schema enforcement: every present key must be consumed by a getter.
  void require_consumed() const;

  // Effective values (defaults included) recorded by the getters, echoed
  // into output provenance headers.
  const std::map<std::string, std::string>& effective() const {
    return effective_;
  }
  void note_effective(const std::string& section, const std::string& key,
                      const std::string& value) const;

 private:
  struct Section {
    std::vector<std::pair<std::string, std::string>> items;
  };
  std::vector<std::pair<std::string, Section>> sections_;
  mutable std::set<std::string> consumed_;
  mutable std::map<std::string, std::string> effective_;

  const std::string* find(const std::string& section, const std::string& key) const;
};

std::string format_double(double v);  // 9 significant digits

// CSV writer: provenance comment lines, then a header row, then data rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void provenance(const std::map<std::string, std::string>& kv);
  void row(const std::vector<std::string>& cells);
  std::string str() const;
  void save(const std::string& path) const;

 private:
  std::string provenance_;
  std::string rows_;
  std::vector<std::string> columns_;
};

}  // namespace estent

#endif
