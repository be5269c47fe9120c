#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace agtk {

/// A point on the signal timeline, in integer microseconds.
struct TimeOffset {
  std::int64_t micros = 0;

  static TimeOffset from_micros(std::int64_t us);
  static TimeOffset from_millis(std::int64_t ms) { return from_micros(ms * 1000); }

  friend auto operator<=>(const TimeOffset&, const TimeOffset&) = default;
};

/// Decimal seconds with exactly six fractional digits, e.g. "1.500000".
std::string format_seconds(TimeOffset t);

/// Accepts `<digits>[.<1..6 digits>]`. Anything else throws BadTime.
TimeOffset parse_seconds(std::string_view text);

/// A closed interval of signal time.
struct Region {
  TimeOffset start;
  TimeOffset end;

  /// Throws BadRegion when start > end.
  static Region make(TimeOffset start, TimeOffset end);

  bool contains(const Region& inner) const {
    return start <= inner.start && inner.end <= end;
  }
  bool contains(TimeOffset t) const { return start <= t && t <= end; }

  friend bool operator==(const Region&, const Region&) = default;
};

}  // namespace agtk
