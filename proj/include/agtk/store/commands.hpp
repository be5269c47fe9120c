#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace agtk::store {

enum class DocumentKind { table, segments, interlinear, tree };

std::string_view kind_name(DocumentKind kind);
std::optional<DocumentKind> parse_kind(std::string_view name);

/// `args` is a JSON object. A top-level "selection" is folded into it.
struct EditCommand {
  std::string op;
  nlohmann::json args = nlohmann::json::object();
  std::optional<std::uint64_t> base_revision;
};

/// Errors: BadCommand.
EditCommand parse_edit_command(std::string_view json_text);
EditCommand edit_command_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EditCommand& cmd);

/// Operation names accepted for a kind, in a stable order.
std::vector<std::string> kind_ops(DocumentKind kind);

/// Parses `aif`, checks it decodes as a document of `kind` and returns the
/// canonical bytes.
std::string canonicalize(DocumentKind kind, std::string_view aif);

/// Decodes, applies one edit and re-encodes. Throws the owning module's
/// error, UnknownOp or BadCommand; never returns a partially edited payload.
std::string apply_command(DocumentKind kind, std::string_view aif, const EditCommand& cmd);

/// Graph-level and kind-level problems, one readable line each. A payload
/// that does not even parse yields its parse error as the only line.
std::vector<std::string> document_violations(DocumentKind kind, std::string_view aif);

}  // namespace agtk::store
