#include "fdb/config.hpp"

#include <cmath>
#include <fstream>

#include "fdb/errors.hpp"
#include "text.hpp"

namespace fdb {

namespace {
constexpr int kMaxIncludeDepth = 16;
}

Config Config::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open config " + file.string());
  Config c;
  c.read(in, file.parent_path(), file.string(), 0);
  return c;
}

Config Config::parse(std::istream& in, const std::filesystem::path& base_dir,
                     const std::string& source) {
  Config c;
  c.read(in, base_dir, source, 0);
  return c;
}

void Config::read(std::istream& in, const std::filesystem::path& base_dir,
                  const std::string& source, int depth) {
  if (depth > kMaxIncludeDepth) throw DataError(source + ": includes nested too deeply");
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    auto s = detail::trim(line);
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = detail::trim(s.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw DataError(where + ": unterminated section header");
      section = std::string(detail::trim(s.substr(1, s.size() - 2)));
      if (section.empty()) throw DataError(where + ": empty section name");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw DataError(where + ": expected 'key = value'");
    const std::string key(detail::trim(s.substr(0, eq)));
    const std::string value(detail::trim(s.substr(eq + 1)));
    if (key.empty()) throw DataError(where + ": empty key");
    if (key == "include") {
      const auto file = base_dir / value;
      std::ifstream sub(file);
      if (!sub) throw DataError(where + ": cannot open included file " + file.string());
      read(sub, file.parent_path(), file.string(), depth + 1);
      continue;
    }
    sections_[section][key] = Entry{value, base_dir, where};
  }
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

const Config::Entry& Config::entry(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end() || !it->second.count(key)) {
    throw DataError("config is missing [" + section + "] " + key);
  }
  return it->second.at(key);
}

std::string Config::text(const std::string& section, const std::string& key) const {
  return entry(section, key).value;
}

double Config::number(const std::string& section, const std::string& key) const {
  const auto& e = entry(section, key);
  double v = 0.0;
  if (!detail::parse_double(e.value, v) || !std::isfinite(v)) {
    throw DataError(e.where + ": [" + section + "] " + key + " is not a number");
  }
  return v;
}

double Config::number_or(const std::string& section, const std::string& key,
                         double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

int Config::integer(const std::string& section, const std::string& key) const {
  const double v = number(section, key);
  if (v != std::floor(v)) {
    throw DataError(entry(section, key).where + ": [" + section + "] " + key +
                    " must be an integer");
  }
  return static_cast<int>(v);
}

bool Config::boolean(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  const auto& e = entry(section, key);
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw DataError(e.where + ": [" + section + "] " + key + " must be true or false");
}

std::vector<std::string> Config::list(const std::string& section, const std::string& key) const {
  std::vector<std::string> out;
  for (auto item : detail::split(entry(section, key).value, ',')) {
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

std::filesystem::path Config::path(const std::string& section, const std::string& key) const {
  const auto& e = entry(section, key);
  std::filesystem::path p(e.value);
  return p.is_absolute() ? p : e.dir / p;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  sections_[section][key] = Entry{value, std::filesystem::current_path(), "<override>"};
}

}  // namespace fdb
