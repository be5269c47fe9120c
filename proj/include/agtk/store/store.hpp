#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "agtk/store/commands.hpp"

namespace agtk::store {

struct DocumentRecord {
  std::string doc_id;
  DocumentKind kind = DocumentKind::tree;
  std::uint64_t revision = 0;
  std::string payload;  // canonical AIF

  friend bool operator==(const DocumentRecord&, const DocumentRecord&) = default;
};

/// Letters, digits, '_', '-' and '.', not starting with '.'.
bool valid_doc_id(std::string_view id);

/// File-backed registry: `<id>.aif` holds the payload and `<id>.meta` holds
/// `kind=` and `revision=` lines. Reads of one document may run together;
/// writes to it are exclusive.
class Store {
 public:
  /// Creates `root` if needed. Errors: IoFailure.
  explicit Store(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  /// Metadata of every document, sorted by id; payloads left empty.
  std::vector<DocumentRecord> list_documents() const;
  /// Errors: UnknownDocument, CorruptMeta, IoFailure.
  DocumentRecord load_document(const std::string& doc_id) const;
  /// Writes payload, then meta, each through a rename. Errors: BadId, IoFailure.
  void save_document(const DocumentRecord& record);

  /// Canonicalizes and stores a new document at revision 0.
  /// Errors: DocumentExists, BadId, and any decoding error for `kind`.
  DocumentRecord create_document(const std::string& doc_id, DocumentKind kind, std::string_view aif);

  /// Errors: UnknownDocument, RevisionConflict, BadCommand when the command
  /// carries no base revision, and module errors.
  std::uint64_t apply_edit(const std::string& doc_id, const EditCommand& cmd);

 private:
  std::shared_mutex& lock_for(const std::string& doc_id) const;
  DocumentRecord read_unlocked(const std::string& doc_id) const;
  void write_unlocked(const DocumentRecord& record);

  std::filesystem::path root_;
  mutable std::mutex locks_guard_;
  mutable std::map<std::string, std::unique_ptr<std::shared_mutex>> locks_;
};

}  // namespace agtk::store
