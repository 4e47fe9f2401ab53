#include "xdm/core.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace xdm {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::self_pair: return "SelfPair";
    case Errc::malformed_line: return "MalformedLine";
    case Errc::negative_timestamp: return "NegativeTimestamp";
    case Errc::mixed_user: return "MixedUser";
    case Errc::unknown_user: return "UnknownUser";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::empty_corpus: return "EmptyCorpus";
    case Errc::single_class: return "SingleClass";
    case Errc::empty_input: return "EmptyInput";
    case Errc::k_too_large: return "KTooLarge";
    case Errc::too_few: return "TooFew";
    case Errc::insufficient_population: return "InsufficientPopulation";
    case Errc::config_invalid: return "ConfigInvalid";
    case Errc::target_unreachable: return "TargetUnreachable";
    case Errc::empty_gold: return "EmptyGold";
    case Errc::not_sorted: return "NotSorted";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

std::size_t PairHash::operator()(const Pair& p) const noexcept {
  std::size_t h = std::hash<std::string>{}(p.a);
  std::size_t g = std::hash<std::string>{}(p.b);
  return h ^ (g + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Pair canonical_pair(const UserId& x, const UserId& y) {
  if (x == y) fail(Errc::self_pair, "pair of identical userIDs: " + x);
  return x < y ? Pair{x, y} : Pair{y, x};
}

UserProfile build_profile(std::span<const EventRecord> events) {
  UserProfile p;
  if (events.empty()) return p;
  p.user = events.front().user;

  std::map<std::string, std::uint32_t> facts;
  std::map<std::string, std::uint32_t> domains;
  std::map<std::uint32_t, std::uint32_t> titles;
  std::set<std::int32_t> days;
  std::map<std::string, HourHistogram> fact_hours;
  std::map<std::string, HourHistogram> domain_hours;
  std::map<std::int32_t, std::set<std::string>> day_facts;

  for (const EventRecord& ev : events) {
    if (ev.user != p.user) {
      fail(Errc::mixed_user, "events for " + p.user + " and " + ev.user + " in one profile");
    }
    const std::int32_t day = day_of(ev.ts);
    const int hour = hour_of(ev.ts);
    facts[ev.fact] += 1;
    domains[ev.domain] += 1;
    for (std::uint32_t tok : ev.title_tokens) titles[tok] += 1;
    days.insert(day);
    p.hour_histogram[static_cast<std::size_t>(hour)] += 1;
    fact_hours[ev.fact][static_cast<std::size_t>(hour)] += 1;
    domain_hours[ev.domain][static_cast<std::size_t>(hour)] += 1;
    day_facts[day].insert(ev.fact);
    p.event_count += 1;
  }

  p.fact_counts.assign(facts.begin(), facts.end());
  p.domain_counts.assign(domains.begin(), domains.end());
  p.title_counts.assign(titles.begin(), titles.end());
  p.day_set.assign(days.begin(), days.end());
  p.per_fact_hours.assign(fact_hours.begin(), fact_hours.end());
  p.per_domain_hours.assign(domain_hours.begin(), domain_hours.end());
  p.per_day_facts.reserve(day_facts.size());
  for (auto& [day, fs] : day_facts) {
    p.per_day_facts.emplace_back(day, std::vector<std::string>(fs.begin(), fs.end()));
  }
  return p;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t s = base ^ (0x7f4a7c15ULL + stream * 0x9e3779b97f4a7c15ULL);
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b >> 1);
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
  // FNV-1a over the tag, folded into the base stream.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return derive_seed(base, h);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) fail(Errc::empty_input, "Rng::below(0)");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

}  // namespace xdm
