#pragma once

// Random instance generators shared by unit, property and acceptance tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "agtk/formats/table.hpp"
#include "agtk/graph.hpp"
#include "agtk/interlinear.hpp"
#include "agtk/segments.hpp"
#include "agtk/tree.hpp"

namespace agtk::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[uniform(rng, 0, v.size() - 1)];
}

/// Lowercase word of 1..max_len letters.
std::string random_word(Rng& rng, std::size_t max_len = 6);

/// Printable text that exercises escaping: XML specials, quotes, commas,
/// non-ASCII, inner spaces. Never has leading/trailing whitespace.
std::string random_text(Rng& rng, std::size_t max_words = 4);

/// A well-formed tree with `terminals` words. Internal structure is random;
/// with `traces`, some nodes share trace indices and some words are `*T*`
/// empty elements under a syn node.
Tree random_tree(Rng& rng, std::size_t terminals, bool traces = false);

/// Graph built through the checked API: valid by construction. Some anchors
/// are untimed, some annotations share anchors.
AnnotationGraph random_graph(Rng& rng, std::size_t annotations);

/// Graph of timed "segment"-like annotations over [0, horizon] seconds.
AnnotationGraph random_timed_graph(Rng& rng, std::size_t annotations, std::int64_t horizon_ms = 20000);

formats::TableConfig random_table_config(Rng& rng);
AnnotationGraph random_table_graph(Rng& rng, const formats::TableConfig& cfg, std::size_t rows);

/// Segments in time order; with `overlapping` they may overlap freely,
/// otherwise each starts at or after the previous end.
segments::ChannelDoc random_channel(Rng& rng, std::size_t segments, bool overlapping = false);

/// WD > MP with MP ~ MP-GLOSS; WD joined with " ", MP with "".
interlinear::TypeConfig wd_mp_config();
/// Random units with WD cells whose text is the concatenation of their MP
/// children, MP-GLOSS co-texts, and some aligned regions.
interlinear::IlDoc random_il_doc(Rng& rng, std::size_t units);

}  // namespace agtk::testing
