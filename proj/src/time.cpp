#include "agtk/time.hpp"

#include <charconv>
#include <limits>

#include "agtk/error.hpp"

namespace agtk {

namespace {

constexpr std::int64_t kMicrosPerSecond = 1'000'000;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

TimeOffset TimeOffset::from_micros(std::int64_t us) {
  if (us < 0) throw Error(ErrorCode::BadTime, "negative time offset");
  return TimeOffset{us};
}

std::string format_seconds(TimeOffset t) {
  std::string whole = std::to_string(t.micros / kMicrosPerSecond);
  std::string frac = std::to_string(t.micros % kMicrosPerSecond);
  return whole + "." + std::string(6 - frac.size(), '0') + frac;
}

TimeOffset parse_seconds(std::string_view text) {
  auto bad = [&] { return Error(ErrorCode::BadTime, "not a time: '" + std::string(text) + "'"); };
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (!all_digits(whole)) throw bad();
  if (dot != std::string_view::npos && (!all_digits(frac) || frac.size() > 6)) throw bad();

  std::int64_t seconds = 0;
  auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), seconds);
  if (ec != std::errc{} || ptr != whole.data() + whole.size()) throw bad();
  if (seconds > std::numeric_limits<std::int64_t>::max() / kMicrosPerSecond - 1) throw bad();

  std::int64_t micros = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    micros = micros * 10 + (i < frac.size() ? frac[i] - '0' : 0);
  }
  return TimeOffset{seconds * kMicrosPerSecond + micros};
}

Region Region::make(TimeOffset start, TimeOffset end) {
  if (end < start) {
    throw Error(ErrorCode::BadRegion,
                "region end " + format_seconds(end) + " precedes start " + format_seconds(start));
  }
  return Region{start, end};
}

}  // namespace agtk
