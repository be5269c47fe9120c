#include "agtk/graph.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <unordered_set>

#include "agtk/error.hpp"

namespace agtk {

// ---------------------------------------------------------------- FeatureMap

FeatureMap::FeatureMap(std::initializer_list<Entry> entries) {
  for (const auto& [name, value] : entries) add(name, value);
}

void FeatureMap::set(std::string name, std::string value) {
  if (name.empty()) throw Error(ErrorCode::BadFeature, "empty feature name");
  for (auto& entry : entries_) {
    if (entry.first == name) {
      entry.second = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(name), std::move(value));
}

void FeatureMap::add(std::string name, std::string value) {
  if (name.empty()) throw Error(ErrorCode::BadFeature, "empty feature name");
  if (contains(name)) throw Error(ErrorCode::BadFeature, "duplicate feature '" + name + "'");
  entries_.emplace_back(std::move(name), std::move(value));
}

const std::string* FeatureMap::find(std::string_view name) const {
  for (const auto& entry : entries_) {
    if (entry.first == name) return &entry.second;
  }
  return nullptr;
}

std::string FeatureMap::get_or(std::string_view name, std::string_view fallback) const {
  const std::string* v = find(name);
  return v ? *v : std::string(fallback);
}

bool FeatureMap::erase(std::string_view name) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry& e) { return e.first == name; });
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

// ------------------------------------------------------------------- helpers

std::optional<std::uint64_t> id_number(std::string_view id, char prefix) {
  if (id.size() < 2 || id[0] != prefix || id[1] == '0') return std::nullopt;
  std::uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(id.data() + 1, id.data() + id.size(), n);
  if (ec != std::errc{} || ptr != id.data() + id.size() || n == 0) return std::nullopt;
  return n;
}

namespace {

std::uint64_t numeric_or_max(std::string_view id) {
  return id_number(id, 'e').value_or(UINT64_MAX);
}

}  // namespace

// ----------------------------------------------------------- AnnotationGraph

AnnotationGraph::AnnotationGraph(std::string id) : id_(std::move(id)) {}

std::string AnnotationGraph::add_anchor(std::optional<TimeOffset> offset) {
  std::string id = "a" + std::to_string(next_anchor_++);
  anchor_index_.emplace(id, anchors_.size());
  anchors_.push_back(Anchor{id, offset});
  return id;
}

std::string AnnotationGraph::add_annotation(std::string type, const std::string& start,
                                            const std::string& end, FeatureMap features) {
  const Anchor* s = find_anchor(start);
  const Anchor* e = find_anchor(end);
  if (!s) throw Error(ErrorCode::UnknownAnchor, start);
  if (!e) throw Error(ErrorCode::UnknownAnchor, end);
  if (s->offset && e->offset && *e->offset < *s->offset) {
    throw Error(ErrorCode::ReversedTimes,
                start + "=" + format_seconds(*s->offset) + " > " + end + "=" +
                    format_seconds(*e->offset));
  }
  if (start != end && reaches(end, start)) {
    throw Error(ErrorCode::CycleWouldForm, start + " -> " + end);
  }
  std::string id = "e" + std::to_string(next_annotation_++);
  annotation_index_.emplace(id, annotations_.size());
  annotations_.push_back(Annotation{id, std::move(type), start, end, std::move(features)});
  return id;
}

void AnnotationGraph::delete_annotation(const std::string& id) {
  auto it = annotation_index_.find(id);
  if (it == annotation_index_.end()) throw Error(ErrorCode::UnknownAnnotation, id);
  Annotation removed = std::move(annotations_[it->second]);
  annotations_.erase(annotations_.begin() + static_cast<std::ptrdiff_t>(it->second));
  reindex();
  const std::string candidates[] = {removed.start, removed.end};
  collect_orphans(candidates);
}

void AnnotationGraph::retime_annotation(const std::string& id, std::optional<TimeOffset> start,
                                        std::optional<TimeOffset> end) {
  auto it = annotation_index_.find(id);
  if (it == annotation_index_.end()) throw Error(ErrorCode::UnknownAnnotation, id);
  if (start && end && *end < *start) {
    throw Error(ErrorCode::ReversedTimes, format_seconds(*start) + " > " + format_seconds(*end));
  }
  // Fresh anchors have no other arcs, so no cycle can form.
  Annotation& ann = annotations_[it->second];
  const std::string old[] = {ann.start, ann.end};
  ann.start = add_anchor(start);
  ann.end = add_anchor(end);
  collect_orphans(old);
}

void AnnotationGraph::set_feature(const std::string& id, std::string name, std::string value) {
  auto it = annotation_index_.find(id);
  if (it == annotation_index_.end()) throw Error(ErrorCode::UnknownAnnotation, id);
  annotations_[it->second].features.set(std::move(name), std::move(value));
}

void AnnotationGraph::reorder_annotations(std::span<const std::string> ids) {
  std::vector<Annotation> ordered;
  ordered.reserve(annotations_.size());
  std::vector<bool> taken(annotations_.size(), false);
  for (const auto& id : ids) {
    auto it = annotation_index_.find(id);
    if (it == annotation_index_.end()) throw Error(ErrorCode::UnknownAnnotation, id);
    if (taken[it->second]) continue;
    taken[it->second] = true;
    ordered.push_back(annotations_[it->second]);
  }
  for (std::size_t i = 0; i < annotations_.size(); ++i) {
    if (!taken[i]) ordered.push_back(annotations_[i]);
  }
  annotations_ = std::move(ordered);
  reindex();
}

void AnnotationGraph::insert_anchor(Anchor anchor) {
  auto n = id_number(anchor.id, 'a');
  if (!n) throw Error(ErrorCode::BadId, "anchor id '" + anchor.id + "'");
  if (anchor_index_.count(anchor.id)) throw Error(ErrorCode::DuplicateId, anchor.id);
  next_anchor_ = std::max(next_anchor_, *n + 1);
  anchor_index_.emplace(anchor.id, anchors_.size());
  anchors_.push_back(std::move(anchor));
}

void AnnotationGraph::insert_annotation(Annotation annotation) {
  auto n = id_number(annotation.id, 'e');
  if (!n) throw Error(ErrorCode::BadId, "annotation id '" + annotation.id + "'");
  if (annotation_index_.count(annotation.id)) throw Error(ErrorCode::DuplicateId, annotation.id);
  next_annotation_ = std::max(next_annotation_, *n + 1);
  annotation_index_.emplace(annotation.id, annotations_.size());
  annotations_.push_back(std::move(annotation));
}

const Anchor* AnnotationGraph::find_anchor(std::string_view id) const {
  auto it = anchor_index_.find(std::string(id));
  return it == anchor_index_.end() ? nullptr : &anchors_[it->second];
}

const Annotation* AnnotationGraph::find_annotation(std::string_view id) const {
  auto it = annotation_index_.find(std::string(id));
  return it == annotation_index_.end() ? nullptr : &annotations_[it->second];
}

const Anchor& AnnotationGraph::anchor(std::string_view id) const {
  const Anchor* a = find_anchor(id);
  if (!a) throw Error(ErrorCode::UnknownAnchor, std::string(id));
  return *a;
}

const Annotation& AnnotationGraph::annotation(std::string_view id) const {
  const Annotation* a = find_annotation(id);
  if (!a) throw Error(ErrorCode::UnknownAnnotation, std::string(id));
  return *a;
}

std::vector<std::string> AnnotationGraph::annotations_in_range(
    TimeOffset t0, TimeOffset t1, std::optional<std::string_view> type) const {
  if (t1 < t0) {
    throw Error(ErrorCode::BadRange, format_seconds(t0) + " > " + format_seconds(t1));
  }
  struct Hit {
    TimeOffset start, end;
    const Annotation* ann;
  };
  std::vector<Hit> hits;
  for (const auto& ann : annotations_) {
    if (type && ann.type != *type) continue;
    const Anchor* s = find_anchor(ann.start);
    const Anchor* e = find_anchor(ann.end);
    if (!s || !e || !s->offset || !e->offset) continue;
    if (*s->offset <= t1 && *e->offset >= t0) hits.push_back(Hit{*s->offset, *e->offset, &ann});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end < b.end;
    auto na = numeric_or_max(a.ann->id), nb = numeric_or_max(b.ann->id);
    if (na != nb) return na < nb;
    return a.ann->id < b.ann->id;
  });
  std::vector<std::string> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(h.ann->id);
  return out;
}

ValidationReport AnnotationGraph::validate() const {
  ValidationReport report;
  for (const auto& ann : annotations_) {
    const Anchor* s = find_anchor(ann.start);
    const Anchor* e = find_anchor(ann.end);
    if (!s) report.push_back(Violation{"UnknownAnchor", {ann.id, ann.start}});
    if (!e) report.push_back(Violation{"UnknownAnchor", {ann.id, ann.end}});
    if (s && e && s->offset && e->offset && *e->offset < *s->offset) {
      report.push_back(Violation{"ReversedTimes", {ann.id, ann.start, ann.end}});
    }
  }

  // Tarjan's strongly connected components over anchors; any component with
  // more than one anchor is a cycle among distinct anchors.
  const std::size_t n = anchors_.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& ann : annotations_) {
    auto s = anchor_index_.find(ann.start);
    auto e = anchor_index_.find(ann.end);
    if (s == anchor_index_.end() || e == anchor_index_.end() || s->second == e->second) continue;
    adj[s->second].push_back(e->second);
  }
  constexpr std::size_t kUnvisited = SIZE_MAX;
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < adj[f.node].size()) {
        std::size_t w = adj[f.node][f.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      std::size_t v = f.node;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        if (comp.size() > 1) components.push_back(std::move(comp));
      }
    }
  }
  std::sort(components.begin(), components.end(), [](const auto& a, const auto& b) {
    return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
  });
  for (auto& comp : components) {
    std::sort(comp.begin(), comp.end());
    Violation v{"Cycle", {}};
    for (std::size_t i : comp) v.ids.push_back(anchors_[i].id);
    report.push_back(std::move(v));
  }
  return report;
}

bool AnnotationGraph::reaches(const std::string& from, const std::string& to) const {
  std::unordered_map<std::string_view, std::vector<std::string_view>> adj;
  for (const auto& ann : annotations_) adj[ann.start].push_back(ann.end);
  std::unordered_set<std::string_view> seen{from};
  std::vector<std::string_view> work{from};
  while (!work.empty()) {
    std::string_view cur = work.back();
    work.pop_back();
    if (cur == to) return true;
    auto it = adj.find(cur);
    if (it == adj.end()) continue;
    for (std::string_view next : it->second) {
      if (seen.insert(next).second) work.push_back(next);
    }
  }
  return false;
}

void AnnotationGraph::collect_orphans(std::span<const std::string> candidates) {
  std::unordered_set<std::string> referenced;
  for (const auto& ann : annotations_) {
    referenced.insert(ann.start);
    referenced.insert(ann.end);
  }
  for (const auto& id : candidates) {
    if (referenced.count(id) || !anchor_index_.count(id)) continue;
    auto pos = anchor_index_.at(id);
    anchors_.erase(anchors_.begin() + static_cast<std::ptrdiff_t>(pos));
    anchor_index_.erase(id);
    for (auto& [key, idx] : anchor_index_) {
      if (idx > pos) --idx;
    }
  }
}

void AnnotationGraph::reindex() {
  annotation_index_.clear();
  for (std::size_t i = 0; i < annotations_.size(); ++i) annotation_index_.emplace(annotations_[i].id, i);
}

}  // namespace agtk
