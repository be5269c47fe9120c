#include "agtk/store/store.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "agtk/error.hpp"

namespace agtk::store {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void io_failure(const std::string& what, const fs::path& p) {
  throw Error(ErrorCode::IoFailure, what + " " + p.string());
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) io_failure("cannot read", p);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) io_failure("cannot read", p);
  return buf.str();
}

void write_atomic(const fs::path& p, std::string_view bytes) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) io_failure("cannot write", tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) io_failure("cannot write", tmp);
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) io_failure("cannot rename onto", p);
}

void require_id(const std::string& id) {
  if (!valid_doc_id(id)) throw Error(ErrorCode::BadId, "invalid document id '" + id + "'");
}

}  // namespace

bool valid_doc_id(std::string_view id) {
  if (id.empty() || id.size() > 200 || id[0] == '.') return false;
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
              c == '.';
    if (!ok) return false;
  }
  return true;
}

Store::Store(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec || !fs::is_directory(root_)) io_failure("cannot open store at", root_);
}

std::shared_mutex& Store::lock_for(const std::string& doc_id) const {
  std::lock_guard guard(locks_guard_);
  auto& slot = locks_[doc_id];
  if (!slot) slot = std::make_unique<std::shared_mutex>();
  return *slot;
}

std::vector<DocumentRecord> Store::list_documents() const {
  std::set<std::string> ids;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root_, ec)) {
    const auto& p = entry.path();
    if (p.extension() == ".aif" || p.extension() == ".meta") {
      std::string stem = p.stem().string();
      if (valid_doc_id(stem)) ids.insert(stem);
    }
  }
  if (ec) io_failure("cannot list", root_);
  std::vector<DocumentRecord> out;
  for (const auto& id : ids) {
    std::shared_lock lock(lock_for(id));
    DocumentRecord r = read_unlocked(id);
    r.payload.clear();
    out.push_back(std::move(r));
  }
  return out;
}

DocumentRecord Store::read_unlocked(const std::string& doc_id) const {
  const fs::path aif = root_ / (doc_id + ".aif");
  const fs::path meta = root_ / (doc_id + ".meta");
  const bool have_aif = fs::exists(aif);
  const bool have_meta = fs::exists(meta);
  if (!have_aif && !have_meta) throw Error(ErrorCode::UnknownDocument, doc_id);
  if (!have_meta) throw Error(ErrorCode::CorruptMeta, doc_id + ": meta file missing");
  if (!have_aif) io_failure("payload missing:", aif);

  DocumentRecord r;
  r.doc_id = doc_id;
  std::optional<DocumentKind> kind;
  std::optional<std::uint64_t> revision;
  std::istringstream lines(read_file(meta));
  for (std::string line; std::getline(lines, line);) {
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::CorruptMeta, doc_id + ": bad line '" + line + "'");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "kind") {
      kind = parse_kind(value);
      if (!kind) throw Error(ErrorCode::CorruptMeta, doc_id + ": unknown kind '" + value + "'");
    } else if (key == "revision") {
      if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos || value.size() > 19) {
        throw Error(ErrorCode::CorruptMeta, doc_id + ": bad revision '" + value + "'");
      }
      revision = std::stoull(value);
    } else {
      throw Error(ErrorCode::CorruptMeta, doc_id + ": unknown key '" + key + "'");
    }
  }
  if (!kind || !revision) throw Error(ErrorCode::CorruptMeta, doc_id + ": kind or revision missing");
  r.kind = *kind;
  r.revision = *revision;
  r.payload = read_file(aif);
  return r;
}

void Store::write_unlocked(const DocumentRecord& record) {
  write_atomic(root_ / (record.doc_id + ".aif"), record.payload);
  write_atomic(root_ / (record.doc_id + ".meta"), "kind=" + std::string(kind_name(record.kind)) +
                                                      "\nrevision=" + std::to_string(record.revision) + "\n");
}

DocumentRecord Store::load_document(const std::string& doc_id) const {
  require_id(doc_id);
  std::shared_lock lock(lock_for(doc_id));
  return read_unlocked(doc_id);
}

void Store::save_document(const DocumentRecord& record) {
  require_id(record.doc_id);
  std::unique_lock lock(lock_for(record.doc_id));
  write_unlocked(record);
}

DocumentRecord Store::create_document(const std::string& doc_id, DocumentKind kind, std::string_view aif) {
  require_id(doc_id);
  DocumentRecord r{doc_id, kind, 0, canonicalize(kind, aif)};
  std::unique_lock lock(lock_for(doc_id));
  if (fs::exists(root_ / (doc_id + ".meta")) || fs::exists(root_ / (doc_id + ".aif"))) {
    throw Error(ErrorCode::DocumentExists, doc_id);
  }
  write_unlocked(r);
  return r;
}

std::uint64_t Store::apply_edit(const std::string& doc_id, const EditCommand& cmd) {
  require_id(doc_id);
  if (!cmd.base_revision) throw Error(ErrorCode::BadCommand, "missing 'base_revision'");
  std::unique_lock lock(lock_for(doc_id));
  DocumentRecord r = read_unlocked(doc_id);
  if (*cmd.base_revision != r.revision) {
    throw Error(ErrorCode::RevisionConflict,
                "base revision " + std::to_string(*cmd.base_revision) + ", current " + std::to_string(r.revision));
  }
  r.payload = apply_command(r.kind, r.payload, cmd);
  ++r.revision;
  write_unlocked(r);
  return r.revision;
}

}  // namespace agtk::store
