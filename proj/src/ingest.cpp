#include "xdm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace xdm {

namespace {

bool valid_user_token(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& what) {
  fail(Errc::malformed_line, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

void EventStore::add(EventRecord ev) {
  by_user_[ev.user].push_back(std::move(ev));
  ++n_events_;
}

const std::vector<EventRecord>* EventStore::events_for(const UserId& u) const {
  auto it = by_user_.find(u);
  return it == by_user_.end() ? nullptr : &it->second;
}

std::vector<UserId> EventStore::users_sorted() const {
  std::vector<UserId> users;
  users.reserve(by_user_.size());
  for (const auto& [u, _] : by_user_) users.push_back(u);
  std::sort(users.begin(), users.end());
  return users;
}

ProfileStore ProfileStore::build(const EventStore& store) {
  ProfileStore ps;
  std::vector<UserId> users = store.users_sorted();
  ps.profiles_.reserve(users.size());
  for (const UserId& u : users) {
    const auto* evs = store.events_for(u);
    UserProfile prof = build_profile(std::span<const EventRecord>(*evs));
    ps.index_.emplace(u, static_cast<std::uint32_t>(ps.profiles_.size()));
    // df counts presence, not multiplicity.
    for (const auto& [t, _] : prof.fact_counts) ps.fact_df_[t] += 1;
    for (const auto& [t, _] : prof.domain_counts) ps.domain_df_[t] += 1;
    for (const auto& [t, _] : prof.title_counts) ps.title_df_[t] += 1;
    for (std::int32_t d : prof.day_set) ps.day_df_[d] += 1;
    ps.profiles_.push_back(std::move(prof));
  }
  return ps;
}

const UserProfile& ProfileStore::at(const UserId& u) const {
  const UserProfile* p = find(u);
  if (!p) fail(Errc::unknown_user, u);
  return *p;
}

const UserProfile* ProfileStore::find(const UserId& u) const {
  auto it = index_.find(u);
  return it == index_.end() ? nullptr : &profiles_[it->second];
}

std::optional<std::uint32_t> ProfileStore::ordinal(const UserId& u) const {
  auto it = index_.find(u);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t ProfileStore::fact_df(const std::string& t) const {
  auto it = fact_df_.find(t);
  return it == fact_df_.end() ? 0 : it->second;
}
std::uint32_t ProfileStore::domain_df(const std::string& t) const {
  auto it = domain_df_.find(t);
  return it == domain_df_.end() ? 0 : it->second;
}
std::uint32_t ProfileStore::title_df(std::uint32_t t) const {
  auto it = title_df_.find(t);
  return it == title_df_.end() ? 0 : it->second;
}
std::uint32_t ProfileStore::day_df(std::int32_t d) const {
  auto it = day_df_.find(d);
  return it == day_df_.end() ? 0 : it->second;
}

EventStore parse_events(std::istream& in) {
  EventStore store;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) bad_line(line_no, "not a JSON object");

    EventRecord ev;
    if (!j.contains("uid") || !j["uid"].is_string()) bad_line(line_no, "missing string field uid");
    if (!j.contains("ts") || !j["ts"].is_number_integer()) bad_line(line_no, "missing integer field ts");
    if (!j.contains("fact") || !j["fact"].is_string()) bad_line(line_no, "missing string field fact");
    if (!j.contains("domain") || !j["domain"].is_string()) bad_line(line_no, "missing string field domain");
    if (!j.contains("title") || !j["title"].is_array()) bad_line(line_no, "missing array field title");

    ev.user = j["uid"].get<std::string>();
    if (!valid_user_token(ev.user)) bad_line(line_no, "uid empty or contains whitespace");
    ev.ts = j["ts"].get<std::int64_t>();
    if (ev.ts < 0) {
      fail(Errc::negative_timestamp, "line " + std::to_string(line_no));
    }
    ev.fact = j["fact"].get<std::string>();
    ev.domain = j["domain"].get<std::string>();
    if (ev.fact.empty() || ev.domain.empty()) bad_line(line_no, "fact/domain must be non-empty");
    for (const auto& tok : j["title"]) {
      if (!tok.is_number_integer() || tok.get<std::int64_t>() < 0) {
        bad_line(line_no, "title tokens must be non-negative integers");
      }
      ev.title_tokens.push_back(tok.get<std::uint32_t>());
    }
    store.add(std::move(ev));
  }
  return store;
}

void write_events(std::span<const EventRecord> events, std::ostream& out) {
  for (const EventRecord& ev : events) {
    nlohmann::ordered_json j;
    j["uid"] = ev.user;
    j["ts"] = ev.ts;
    j["fact"] = ev.fact;
    j["domain"] = ev.domain;
    j["title"] = ev.title_tokens;
    out << j.dump() << '\n';
  }
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

template <typename Fn>
void for_each_tsv_line(std::istream& in, Fn fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(line_no, split_tabs(line));
  }
}

}  // namespace

std::vector<Pair> read_pairs(std::istream& in) {
  std::vector<Pair> pairs;
  for_each_tsv_line(in, [&](std::size_t line_no, const std::vector<std::string>& cols) {
    if (cols.size() != 2 || !valid_user_token(cols[0]) || !valid_user_token(cols[1])) {
      bad_line(line_no, "expected uid1<TAB>uid2");
    }
    pairs.push_back(canonical_pair(cols[0], cols[1]));
  });
  return pairs;
}

void write_pairs(std::span<const Pair> pairs, std::ostream& out) {
  for (const Pair& p : pairs) out << p.a << '\t' << p.b << '\n';
}

std::vector<PairSample> read_labeled_pairs(std::istream& in) {
  std::vector<PairSample> samples;
  for_each_tsv_line(in, [&](std::size_t line_no, const std::vector<std::string>& cols) {
    if (cols.size() != 3 || !valid_user_token(cols[0]) || !valid_user_token(cols[1])) {
      bad_line(line_no, "expected uid1<TAB>uid2<TAB>label");
    }
    if (cols[2] != "0" && cols[2] != "1") bad_line(line_no, "label must be 0 or 1");
    PairSample s;
    s.pair = canonical_pair(cols[0], cols[1]);
    s.label = cols[2] == "1" ? 1 : 0;
    samples.push_back(std::move(s));
  });
  return samples;
}

void write_labeled_pairs(std::span<const PairSample> samples, std::ostream& out) {
  for (const PairSample& s : samples) {
    out << s.pair.a << '\t' << s.pair.b << '\t' << (s.label.value_or(0) != 0 ? 1 : 0) << '\n';
  }
}

std::vector<ScoredPair> read_scored_pairs(std::istream& in) {
  std::vector<ScoredPair> pairs;
  for_each_tsv_line(in, [&](std::size_t line_no, const std::vector<std::string>& cols) {
    if (cols.size() != 3 || !valid_user_token(cols[0]) || !valid_user_token(cols[1])) {
      bad_line(line_no, "expected uid1<TAB>uid2<TAB>score");
    }
    ScoredPair sp;
    sp.pair = canonical_pair(cols[0], cols[1]);
    try {
      std::size_t used = 0;
      sp.weight = std::stod(cols[2], &used);
      if (used != cols[2].size()) bad_line(line_no, "trailing junk after score");
    } catch (const std::logic_error&) {
      bad_line(line_no, "score is not a number");
    }
    if (!std::isfinite(sp.weight)) bad_line(line_no, "score must be finite");
    pairs.push_back(std::move(sp));
  });
  return pairs;
}

void write_scored_pairs(std::span<const ScoredPair> pairs, std::ostream& out) {
  char buf[64];
  for (const ScoredPair& p : pairs) {
    std::snprintf(buf, sizeof(buf), "%.6f", p.weight);
    out << p.pair.a << '\t' << p.pair.b << '\t' << buf << '\n';
  }
}

std::vector<UserId> read_user_list(std::istream& in) {
  std::vector<UserId> users;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!valid_user_token(line)) bad_line(line_no, "expected one uid per line");
    users.push_back(line);
  }
  return users;
}

void write_user_list(std::span<const UserId> users, std::ostream& out) {
  for (const UserId& u : users) out << u << '\n';
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open for reading: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot open for writing: " + path);
  return out;
}

}  // namespace xdm
