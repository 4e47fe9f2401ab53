#pragma once
// Event-log and pair-file ingestion: parse events.jsonl, build the profile
// store with per-namespace document frequencies, and read/write every
// pipeline file format bit-exactly.

#include <fstream>
#include <iosfwd>
#include <unordered_map>

#include "xdm/core.hpp"

namespace xdm {

// Events grouped by userID, insertion order preserved within a user.
class EventStore {
 public:
  void add(EventRecord ev);

  std::size_t user_count() const { return by_user_.size(); }
  std::uint64_t event_count() const { return n_events_; }
  const std::vector<EventRecord>* events_for(const UserId& u) const;
  // User ids sorted byte-wise ascending.
  std::vector<UserId> users_sorted() const;

 private:
  std::unordered_map<UserId, std::vector<EventRecord>> by_user_;
  std::uint64_t n_events_ = 0;
};

// One profile per user plus global document frequencies (presence counts)
// for facts, domains, title tokens and active days.
class ProfileStore {
 public:
  static ProfileStore build(const EventStore& store);

  std::size_t size() const { return profiles_.size(); }
  // Sorted by user id; the ordinal of a profile equals its rank in that order.
  const std::vector<UserProfile>& profiles() const { return profiles_; }
  const UserProfile& at(const UserId& u) const;  // throws UnknownUser
  const UserProfile* find(const UserId& u) const;
  std::optional<std::uint32_t> ordinal(const UserId& u) const;
  const UserId& user_at(std::uint32_t ord) const { return profiles_[ord].user; }

  std::uint32_t fact_df(const std::string& t) const;
  std::uint32_t domain_df(const std::string& t) const;
  std::uint32_t title_df(std::uint32_t t) const;
  std::uint32_t day_df(std::int32_t d) const;

 private:
  std::vector<UserProfile> profiles_;
  std::unordered_map<UserId, std::uint32_t> index_;
  std::unordered_map<std::string, std::uint32_t> fact_df_;
  std::unordered_map<std::string, std::uint32_t> domain_df_;
  std::unordered_map<std::uint32_t, std::uint32_t> title_df_;
  std::unordered_map<std::int32_t, std::uint32_t> day_df_;
};

// events.jsonl: one object per line with keys uid, ts, fact, domain, title.
EventStore parse_events(std::istream& in);
void write_events(std::span<const EventRecord> events, std::ostream& out);

// matches.tsv / candidates.tsv: uid1<TAB>uid2, canonicalized on read.
std::vector<Pair> read_pairs(std::istream& in);
void write_pairs(std::span<const Pair> pairs, std::ostream& out);

// negatives.tsv: uid1<TAB>uid2<TAB>label.
std::vector<PairSample> read_labeled_pairs(std::istream& in);
void write_labeled_pairs(std::span<const PairSample> samples, std::ostream& out);

// predictions.tsv: uid1<TAB>uid2<TAB>score, descending score, 6 decimals.
std::vector<ScoredPair> read_scored_pairs(std::istream& in);
void write_scored_pairs(std::span<const ScoredPair> pairs, std::ostream& out);

// test_users.txt: one uid per line.
std::vector<UserId> read_user_list(std::istream& in);
void write_user_list(std::span<const UserId> users, std::ostream& out);

std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

}  // namespace xdm
