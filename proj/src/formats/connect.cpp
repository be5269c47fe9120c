#include "agtk/formats/connect.hpp"

#include <array>
#include <cctype>

#include "agtk/error.hpp"
#include "agtk/text.hpp"

namespace agtk::formats {

namespace {

constexpr std::array<ConnectKey, 5> kStandardKeys{{
    {"DSN", "Registered ODBC Data Source Name."},
    {"SERVER", "The hostname of the database server."},
    {"UID", "User name as established on the server. SQL Server this is the logon name."},
    {"PWD", "Password that corresponds with the logon name."},
    {"DATABASE", "Database to connect to. If not given, DSN is used."},
}};

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::span<const ConnectKey> standard_connect_keys() { return kStandardKeys; }

void ConnectParams::set(std::string key, std::string value) {
  key = upper(key);
  for (auto& entry : entries_) {
    if (entry.first == key) {
      entry.second = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> ConnectParams::get(std::string_view key) const {
  std::string k = upper(key);
  for (const auto& [name, value] : entries_) {
    if (name == k) return value;
  }
  return std::nullopt;
}

std::optional<std::string> ConnectParams::database() const {
  if (auto db = get("DATABASE")) return db;
  return get("DSN");
}

ConnectParams parse_connect_string(std::string_view s) {
  ConnectParams params;
  while (!s.empty()) {
    auto semi = s.find(';');
    std::string_view part = s.substr(0, semi);
    s = semi == std::string_view::npos ? std::string_view{} : s.substr(semi + 1);
    if (text::trim(part).empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::MissingEquals, std::string(part));
    std::string_view key = text::trim(part.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::MissingEquals, std::string(part));
    params.set(std::string(key), std::string(part.substr(eq + 1)));
  }
  return params;
}

std::string emit_connect_string(const ConnectParams& params) {
  std::string out;
  for (const auto& [key, value] : params.entries()) {
    if (!out.empty()) out += ';';
    out += key;
    out += '=';
    out += value;
  }
  return out;
}

}  // namespace agtk::formats
