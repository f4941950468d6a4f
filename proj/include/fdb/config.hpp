#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fdb {

// Plain-text configuration: "[section]" headers, "key = value" lines, '#'
// comments. A top-level or in-section line "include = other.conf" splices in
// another file, resolved relative to the including file. Later definitions
// override earlier ones. Relative file values are resolved against the
// directory of the file that defined them.
class Config {
 public:
  static Config load(const std::filesystem::path& file);
  static Config parse(std::istream& in, const std::filesystem::path& base_dir,
                      const std::string& source = "<stream>");

  bool has(const std::string& section, const std::string& key) const;
  std::string text(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key, double fallback) const;
  int integer(const std::string& section, const std::string& key) const;
  bool boolean(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<std::string> list(const std::string& section, const std::string& key) const;
  std::filesystem::path path(const std::string& section, const std::string& key) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

 private:
  struct Entry {
    std::string value;
    std::filesystem::path dir;
    std::string where;
  };
  void read(std::istream& in, const std::filesystem::path& base_dir, const std::string& source,
            int depth);
  const Entry& entry(const std::string& section, const std::string& key) const;

  std::map<std::string, std::map<std::string, Entry>> sections_;
};

}  // namespace fdb
