#include "wsncov/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace wsncov
{

namespace
{

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> to_double(const std::string& s)
{
  if (s.empty())
    return std::nullopt;
  std::size_t pos = 0;
  try
  {
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v))
      return std::nullopt;
    return v;
  }
  catch (const std::exception&)
  {
    return std::nullopt;
  }
}

}  // namespace

IniDocument IniDocument::parse(std::istream& in, std::string source)
{
  IniDocument doc;
  doc.source_ = std::move(source);
  doc.sections_.push_back({"", 0, {}});

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw))
  {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';')
      continue;
    // Inline comments need whitespace before the marker.
    for (std::size_t i = 1; i < line.size(); ++i)
      if ((line[i] == '#' || line[i] == ';') && (line[i - 1] == ' ' || line[i - 1] == '\t'))
      {
        line = trim(std::string_view(line).substr(0, i));
        break;
      }

    if (line.front() == '[')
    {
      if (line.back() != ']')
        doc.fail(line_no, "unterminated section header");
      const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      if (name.empty())
        doc.fail(line_no, "empty section name");
      if (doc.find(name) != nullptr)
        doc.fail(line_no, "duplicate section [" + name + "]");
      doc.sections_.push_back({name, line_no, {}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      doc.fail(line_no, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty())
      doc.fail(line_no, "missing key before '='");

    auto& entries = doc.sections_.back().entries;
    if (entries.contains(key))
      doc.fail(line_no, "duplicate key '" + key + "'");
    entries.emplace(key, Entry{value, line_no, false});
  }
  return doc;
}

const IniDocument::Section* IniDocument::find(const std::string& name) const
{
  for (const auto& s : sections_)
    if (s.name == name)
      return &s;
  return nullptr;
}

void IniDocument::fail(int line, const std::string& message) const
{
  throw ConfigError(source_ + ":" + std::to_string(line) + ": " + message);
}

std::optional<std::string> IniDocument::get(const Section& s, const std::string& key) const
{
  const auto it = s.entries.find(key);
  if (it == s.entries.end())
    return std::nullopt;
  it->second.used = true;
  return it->second.value;
}

const IniDocument::Entry& IniDocument::require(const Section& s, const std::string& key) const
{
  const auto it = s.entries.find(key);
  if (it == s.entries.end())
    fail(s.line, "section [" + s.name + "] is missing required key '" + key + "'");
  it->second.used = true;
  return it->second;
}

double IniDocument::get_double(const Section& s, const std::string& key, std::optional<double> fallback) const
{
  if (fallback && !s.entries.contains(key))
    return *fallback;
  const Entry& e = require(s, key);
  const auto v = to_double(e.value);
  if (!v)
    fail(e.line, "'" + key + "' expects a number, got '" + e.value + "'");
  return *v;
}

std::int64_t IniDocument::get_int(const Section& s, const std::string& key, std::optional<std::int64_t> fallback) const
{
  if (fallback && !s.entries.contains(key))
    return *fallback;
  const Entry& e = require(s, key);
  std::int64_t v = 0;
  const auto* end = e.value.data() + e.value.size();
  const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    fail(e.line, "'" + key + "' expects an integer, got '" + e.value + "'");
  return v;
}

std::uint64_t IniDocument::get_u64(const Section& s, const std::string& key, std::optional<std::uint64_t> fallback) const
{
  if (fallback && !s.entries.contains(key))
    return *fallback;
  const Entry& e = require(s, key);
  std::uint64_t v = 0;
  const auto* end = e.value.data() + e.value.size();
  const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    fail(e.line, "'" + key + "' expects an unsigned 64-bit integer, got '" + e.value + "'");
  return v;
}

bool IniDocument::get_bool(const Section& s, const std::string& key, std::optional<bool> fallback) const
{
  if (fallback && !s.entries.contains(key))
    return *fallback;
  const Entry& e = require(s, key);
  if (e.value == "true" || e.value == "yes" || e.value == "1")
    return true;
  if (e.value == "false" || e.value == "no" || e.value == "0")
    return false;
  fail(e.line, "'" + key + "' expects true or false, got '" + e.value + "'");
}

std::string IniDocument::get_string(const Section& s, const std::string& key,
                                    std::optional<std::string> fallback) const
{
  if (fallback && !s.entries.contains(key))
    return *fallback;
  return require(s, key).value;
}

void IniDocument::reject_unused() const
{
  for (const auto& s : sections_)
    for (const auto& [key, e] : s.entries)
      if (!e.used)
        fail(e.line, "unknown key '" + key + "'" + (s.name.empty() ? "" : " in section [" + s.name + "]"));
}

std::vector<double> parse_grid(const std::string& text)
{
  std::vector<double> out;
  if (text.find(':') != std::string::npos)
  {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':'))
    {
      const auto v = to_double(trim(item));
      if (!v)
        throw std::invalid_argument("bad range component '" + trim(item) + "'");
      parts.push_back(*v);
    }
    if (parts.size() != 3 || parts[2] <= 0.0 || parts[1] < parts[0])
      throw std::invalid_argument("range must be start:stop:step with step > 0 and stop >= start");
    const auto steps = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    if (steps > 1000000)
      throw std::invalid_argument("range has too many points");
    // Index-based so that 0:1:0.1 yields exactly 11 points.
    for (long i = 0; i <= steps; ++i)
      out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
  }

  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    const auto v = to_double(trim(item));
    if (!v)
      throw std::invalid_argument("bad grid value '" + trim(item) + "'");
    out.push_back(*v);
  }
  return out;
}

}  // namespace wsncov
