#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace agtk {

enum class ErrorCode {
  // graph
  UnknownAnchor,
  UnknownAnnotation,
  CycleWouldForm,
  ReversedTimes,
  BadRange,
  DuplicateId,
  BadId,
  BadFeature,
  BadTime,
  // codecs
  UnbalancedParens,
  EmptyNode,
  BadToken,
  MalformedXml,
  SchemaViolation,
  ColumnCountMismatch,
  BadConfig,
  BadLine,
  MissingEquals,
  NotATreeEncoding,
  Unrepresentable,
  // table
  NoCurrentRow,
  NoRegion,
  UnknownColumn,
  EmptyQuery,
  NoCursor,
  BadRegion,
  // segments / interlinear
  NoCurrent,
  NoPrevious,
  NoPreviousSibling,
  SplitPointOutOfRange,
  BadTextOffset,
  WouldInvert,
  OutsideParent,
  UnknownCell,
  UnknownType,
  // tree
  UnknownNode,
  BadSelection,
  NotSameParent,
  RootSelected,
  WouldEmptyParent,
  WrdNotDeletable,
  RootNotDeletable,
  WordOrderChange,
  CyclicMove,
  InvalidTarget,
  EmptyLabel,
  SameNode,
  UntraceableWord,
  EmptyInput,
  EmptyDocument,
  // store / service
  IoFailure,
  CorruptMeta,
  UnknownDocument,
  DocumentExists,
  RevisionConflict,
  BadCommand,
  UnknownOp,
  BindFailure,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure in the library surfaces as this exception. `code` is stable
/// and machine-readable; `detail` is a human-oriented message. Parse errors
/// also carry a byte offset or line/row number in `position`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail,
        std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<std::size_t> position_;
};

}  // namespace agtk
