#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "agtk/time.hpp"

namespace agtk {

/// Insertion-ordered feature record carried by an annotation.
class FeatureMap {
 public:
  using Entry = std::pair<std::string, std::string>;

  FeatureMap() = default;
  FeatureMap(std::initializer_list<Entry> entries);

  /// Inserts or replaces. Throws BadFeature on an empty name.
  void set(std::string name, std::string value);
  /// Appends; throws BadFeature on an empty or duplicate name.
  void add(std::string name, std::string value);
  const std::string* find(std::string_view name) const;
  std::string get_or(std::string_view name, std::string_view fallback = {}) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  bool erase(std::string_view name);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Graph node. The unit is always seconds.
struct Anchor {
  std::string id;
  std::optional<TimeOffset> offset;

  friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// Graph arc from `start` to `end`, labeled with a feature record.
struct Annotation {
  std::string id;
  std::string type;
  std::string start;
  std::string end;
  FeatureMap features;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct Violation {
  std::string code;  // UnknownAnchor | ReversedTimes | Cycle
  std::vector<std::string> ids;

  friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

/// Numeric part of an `a<n>` / `e<n>` id; nullopt when `id` does not match.
std::optional<std::uint64_t> id_number(std::string_view id, char prefix);

/// A directed acyclic graph of anchors (optionally time-stamped) and typed,
/// feature-labeled annotations. Anchors and annotations keep insertion
/// order, which is also their serialization order.
///
/// The checked mutators (`add_*`, `delete_annotation`, `retime_annotation`)
/// preserve every graph invariant. `insert_*` are for deserializers: they
/// only refuse duplicate or malformed ids, and the result may need
/// `validate()`.
class AnnotationGraph {
 public:
  explicit AnnotationGraph(std::string id = "g1");

  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  std::string add_anchor(std::optional<TimeOffset> offset = std::nullopt);
  std::string add_annotation(std::string type, const std::string& start,
                             const std::string& end, FeatureMap features = {});
  /// Removes the annotation and garbage-collects anchors no longer referenced.
  void delete_annotation(const std::string& id);

  /// Re-points an annotation at two fresh anchors carrying the given offsets,
  /// collecting the old anchors if orphaned.
  void retime_annotation(const std::string& id, std::optional<TimeOffset> start,
                         std::optional<TimeOffset> end);
  void set_feature(const std::string& id, std::string name, std::string value);

  /// Reorders annotations: listed ids first in the given order, the rest after
  /// in their existing order.
  void reorder_annotations(std::span<const std::string> ids);

  void insert_anchor(Anchor anchor);
  void insert_annotation(Annotation annotation);

  const Anchor* find_anchor(std::string_view id) const;
  const Annotation* find_annotation(std::string_view id) const;
  const Anchor& anchor(std::string_view id) const;
  const Annotation& annotation(std::string_view id) const;

  std::span<const Anchor> anchors() const { return anchors_; }
  std::span<const Annotation> annotations() const { return annotations_; }

  /// Annotations whose closed time interval intersects [t0, t1], both anchors
  /// timed, optionally of one type, ordered by (start, end, id).
  std::vector<std::string> annotations_in_range(TimeOffset t0, TimeOffset t1,
                                                std::optional<std::string_view> type = {}) const;

  ValidationReport validate() const;

  /// Structural equality: id, anchors and annotations (order included).
  friend bool operator==(const AnnotationGraph& a, const AnnotationGraph& b) {
    return a.id_ == b.id_ && a.anchors_ == b.anchors_ && a.annotations_ == b.annotations_;
  }

 private:
  bool reaches(const std::string& from, const std::string& to) const;
  void collect_orphans(std::span<const std::string> candidates);
  void reindex();

  std::string id_;
  std::vector<Anchor> anchors_;
  std::vector<Annotation> annotations_;
  std::unordered_map<std::string, std::size_t> anchor_index_;
  std::unordered_map<std::string, std::size_t> annotation_index_;
  std::uint64_t next_anchor_ = 1;
  std::uint64_t next_annotation_ = 1;
};

/// An ordered collection of graphs, the unit of AIF files.
struct AgSet {
  std::string id = "S";
  std::vector<AnnotationGraph> graphs;

  friend bool operator==(const AgSet&, const AgSet&) = default;
};

}  // namespace agtk
