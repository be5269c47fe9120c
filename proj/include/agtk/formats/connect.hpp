#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace agtk::formats {

/// A standard connect-string parameter and what it means.
struct ConnectKey {
  std::string_view key;
  std::string_view meaning;
};

/// DSN, SERVER, UID, PWD, DATABASE.
std::span<const ConnectKey> standard_connect_keys();

/// Ordered `KEY=value` pairs from an ODBC-style connect string. Keys are
/// stored uppercased and are unique; a repeated key keeps its first position
/// and takes the last value.
class ConnectParams {
 public:
  void set(std::string key, std::string value);
  std::optional<std::string> get(std::string_view key) const;
  /// DATABASE if present, otherwise DSN.
  std::optional<std::string> database() const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const ConnectParams&, const ConnectParams&) = default;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Splits on ';' and each part on its first '='. Empty parts are skipped;
/// keys are trimmed and uppercased. Throws MissingEquals(part).
ConnectParams parse_connect_string(std::string_view s);

/// `KEY=value;KEY=value`.
std::string emit_connect_string(const ConnectParams& params);

}  // namespace agtk::formats
