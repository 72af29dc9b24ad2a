#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsncov
{

/// Malformed or inconsistent configuration. what() carries "source:line: ".
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Flat "key = value" text grouped under "[section]" headers. Lines starting
/// with '#' or ';' are comments. Keys before any header land in section "".
class IniDocument
{
public:
  struct Entry
  {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };

  struct Section
  {
    std::string name;
    int line = 0;
    std::map<std::string, Entry> entries;
  };

  static IniDocument parse(std::istream& in, std::string source = "<config>");

  const std::string& source() const { return source_; }
  const std::vector<Section>& sections() const { return sections_; }
  const Section* find(const std::string& name) const;

  std::optional<std::string> get(const Section& s, const std::string& key) const;
  double get_double(const Section& s, const std::string& key, std::optional<double> fallback = {}) const;
  std::int64_t get_int(const Section& s, const std::string& key, std::optional<std::int64_t> fallback = {}) const;
  std::uint64_t get_u64(const Section& s, const std::string& key, std::optional<std::uint64_t> fallback = {}) const;
  bool get_bool(const Section& s, const std::string& key, std::optional<bool> fallback = {}) const;
  std::string get_string(const Section& s, const std::string& key, std::optional<std::string> fallback = {}) const;

  /// Throws for the first key nobody asked for.
  void reject_unused() const;

  [[noreturn]] void fail(int line, const std::string& message) const;

private:
  const Entry& require(const Section& s, const std::string& key) const;

  std::string source_;
  std::vector<Section> sections_;
};

/// "a:b:step" (inclusive) or a comma separated list.
std::vector<double> parse_grid(const std::string& text);

}  // namespace wsncov
