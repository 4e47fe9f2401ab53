#pragma once
// Domain types shared across the pipeline: browsing events, user profiles,
// canonical user pairs, scored pairs, plus error codes and the deterministic
// RNG plumbing every stochastic stage is seeded through.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xdm {

using UserId = std::string;

enum class Errc {
  self_pair,
  malformed_line,
  negative_timestamp,
  mixed_user,
  unknown_user,
  dimension_mismatch,
  empty_corpus,
  single_class,
  empty_input,
  k_too_large,
  too_few,
  insufficient_population,
  config_invalid,
  target_unreachable,
  empty_gold,
  not_sorted,
  io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& msg);

// One browsing event. `fact` is the hashed URL-level action, `domain` the
// hashed site, `title_tokens` the hashed HTML title.
struct EventRecord {
  UserId user;
  std::int64_t ts = 0;  // unix seconds, >= 0
  std::string fact;
  std::string domain;
  std::vector<std::uint32_t> title_tokens;
};

// Sorted-unique (key, count) bag. Keys strictly ascending, counts > 0.
template <typename K>
using CountBag = std::vector<std::pair<K, std::uint32_t>>;

using HourHistogram = std::array<std::uint64_t, 24>;

constexpr std::int64_t kSecondsPerDay = 86400;

// Day/hour are derived in UTC from unix seconds.
inline std::int32_t day_of(std::int64_t ts) {
  return static_cast<std::int32_t>(ts / kSecondsPerDay);
}
inline int hour_of(std::int64_t ts) { return static_cast<int>((ts / 3600) % 24); }

// Aggregated view of one userID's events. Immutable after build_profile.
struct UserProfile {
  UserId user;
  CountBag<std::string> fact_counts;
  CountBag<std::string> domain_counts;
  CountBag<std::uint32_t> title_counts;
  std::vector<std::int32_t> day_set;  // sorted unique day indices
  HourHistogram hour_histogram{};
  // Hybrid-feature inputs: hour histogram per fact/domain, fact set per day.
  std::vector<std::pair<std::string, HourHistogram>> per_fact_hours;
  std::vector<std::pair<std::string, HourHistogram>> per_domain_hours;
  std::vector<std::pair<std::int32_t, std::vector<std::string>>> per_day_facts;
  std::uint64_t event_count = 0;

  bool empty() const { return event_count == 0; }
};

// Unordered userID pair in canonical order (a < b byte-wise).
struct Pair {
  UserId a;
  UserId b;

  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

struct PairHash {
  std::size_t operator()(const Pair& p) const noexcept;
};

// Throws Errc::self_pair when x == y.
Pair canonical_pair(const UserId& x, const UserId& y);

struct PairSample {
  Pair pair;
  std::optional<int> label;      // 0 or 1 when present
  std::vector<double> features;  // empty until featurized
};

struct ScoredPair {
  Pair pair;
  double weight = 0;  // finite by contract
};

// Aggregates one user's events. All events must share a user id; an empty
// span yields an empty profile. Order-invariant in the input.
UserProfile build_profile(std::span<const EventRecord> events);

// ---------------------------------------------------------------------------
// Deterministic randomness. Every stochastic stage derives its own stream
// from the run seed so stages can be reordered or parallelized without
// changing output bytes.

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // [0,1) with 53 random bits; avoids std::uniform_real_distribution to keep
  // streams identical across standard library implementations.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0,n), n > 0. Rejection sampling, bias-free.
  std::uint64_t below(std::uint64_t n);

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Fisher-Yates; hand-rolled so shuffles are platform-stable.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace xdm
