#include "agtk/error.hpp"

namespace agtk {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownAnchor: return "UnknownAnchor";
    case ErrorCode::UnknownAnnotation: return "UnknownAnnotation";
    case ErrorCode::CycleWouldForm: return "CycleWouldForm";
    case ErrorCode::ReversedTimes: return "ReversedTimes";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::BadId: return "BadId";
    case ErrorCode::BadFeature: return "BadFeature";
    case ErrorCode::BadTime: return "BadTime";
    case ErrorCode::UnbalancedParens: return "UnbalancedParens";
    case ErrorCode::EmptyNode: return "EmptyNode";
    case ErrorCode::BadToken: return "BadToken";
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::ColumnCountMismatch: return "ColumnCountMismatch";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::BadLine: return "BadLine";
    case ErrorCode::MissingEquals: return "MissingEquals";
    case ErrorCode::NotATreeEncoding: return "NotATreeEncoding";
    case ErrorCode::Unrepresentable: return "Unrepresentable";
    case ErrorCode::NoCurrentRow: return "NoCurrentRow";
    case ErrorCode::NoRegion: return "NoRegion";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::NoCursor: return "NoCursor";
    case ErrorCode::BadRegion: return "BadRegion";
    case ErrorCode::NoCurrent: return "NoCurrent";
    case ErrorCode::NoPrevious: return "NoPrevious";
    case ErrorCode::NoPreviousSibling: return "NoPreviousSibling";
    case ErrorCode::SplitPointOutOfRange: return "SplitPointOutOfRange";
    case ErrorCode::BadTextOffset: return "BadTextOffset";
    case ErrorCode::WouldInvert: return "WouldInvert";
    case ErrorCode::OutsideParent: return "OutsideParent";
    case ErrorCode::UnknownCell: return "UnknownCell";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::BadSelection: return "BadSelection";
    case ErrorCode::NotSameParent: return "NotSameParent";
    case ErrorCode::RootSelected: return "RootSelected";
    case ErrorCode::WouldEmptyParent: return "WouldEmptyParent";
    case ErrorCode::WrdNotDeletable: return "WrdNotDeletable";
    case ErrorCode::RootNotDeletable: return "RootNotDeletable";
    case ErrorCode::WordOrderChange: return "WordOrderChange";
    case ErrorCode::CyclicMove: return "CyclicMove";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::SameNode: return "SameNode";
    case ErrorCode::UntraceableWord: return "UntraceableWord";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::CorruptMeta: return "CorruptMeta";
    case ErrorCode::UnknownDocument: return "UnknownDocument";
    case ErrorCode::DocumentExists: return "DocumentExists";
    case ErrorCode::RevisionConflict: return "RevisionConflict";
    case ErrorCode::BadCommand: return "BadCommand";
    case ErrorCode::UnknownOp: return "UnknownOp";
    case ErrorCode::BindFailure: return "BindFailure";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& detail) {
  std::string msg(error_code_name(code));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail, std::optional<std::size_t> position)
    : std::runtime_error(compose(code, detail)),
      code_(code),
      detail_(std::move(detail)),
      position_(position) {}

}  // namespace agtk
