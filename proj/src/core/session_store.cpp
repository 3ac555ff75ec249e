// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/core/session_store.hpp"

#include <algorithm>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "edupsy/core/errors.hpp"

namespace edupsy {

namespace {

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

SessionStore::SessionStore(SessionStoreOptions options)
    : options_(std::move(options)), id_rng_(options_.id_seed.value_or(fresh_seed())) {
  if (!options_.journal.empty()) {
    journal_out_.open(options_.journal, std::ios::app | std::ios::binary);
    if (!journal_out_) {
      throw Error(ErrorKind::io, "cannot open session journal " + options_.journal.string());
    }
  }
}

SessionStore::~SessionStore() = default;

TimestampMs SessionStore::clock() const {
  return options_.clock ? options_.clock() : now_ms();
}

std::string SessionStore::next_id() {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  {
    std::lock_guard lock(id_mutex_);
    hi = id_rng_();
    lo = id_rng_();
  }
  // RFC 4122 version 4 layout.
  hi = (hi & 0xFFFFFFFFFFFF0FFFULL) | 0x0000000000004000ULL;
  lo = (lo & 0x3FFFFFFFFFFFFFFFULL) | 0x8000000000000000ULL;
  char buf[37];
  std::snprintf(buf, sizeof(buf), "%08llx-%04llx-%04llx-%04llx-%012llx",
                static_cast<unsigned long long>(hi >> 32),
                static_cast<unsigned long long>((hi >> 16) & 0xFFFF),
                static_cast<unsigned long long>(hi & 0xFFFF),
                static_cast<unsigned long long>(lo >> 48),
                static_cast<unsigned long long>(lo & 0xFFFFFFFFFFFFULL));
  return buf;
}

Session SessionStore::create_session() {
  auto e = std::make_unique<Entry>();
  e->session.created_at = clock();
  std::unique_lock lock(map_mutex_);
  std::string id = next_id();
  while (sessions_.count(id) != 0) id = next_id();
  e->session.id = id;
  Session copy = e->session;
  sessions_.emplace(id, std::move(e));
  return copy;
}

SessionStore::Entry& SessionStore::entry(const std::string& session_id) const {
  std::shared_lock lock(map_mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Error(ErrorKind::not_found, "unknown session id '" + session_id + "'");
  }
  return *it->second;
}

void SessionStore::append_locked(Entry& e, ChatTurn turn) {
  validate_turn(turn);
  auto& turns = e.session.turns;
  if (!turns.empty()) {
    const ChatTurn& last = turns.back();
    if (turn.timestamp < last.timestamp) {
      throw Error(ErrorKind::validation, "turn timestamp precedes the previous turn");
    }
    if (turn.role == Role::system && last.role != Role::system) {
      throw Error(ErrorKind::validation, "system turns are only allowed before the dialogue");
    }
    if (turn.role != Role::system && turn.role == last.role) {
      throw Error(ErrorKind::validation, "user and assistant turns must alternate");
    }
  }
  turns.push_back(std::move(turn));
}

Session SessionStore::append_turn(const std::string& session_id, ChatTurn turn) {
  Entry& e = entry(session_id);
  std::lock_guard lock(e.mutex);
  if (turn.timestamp == 0) {
    turn.timestamp = clock();
    if (!e.session.turns.empty()) {
      turn.timestamp = std::max(turn.timestamp, e.session.turns.back().timestamp);
    }
  }
  append_locked(e, turn);
  write_journal(session_id, e.session.turns.back());
  return e.session;
}

Session SessionStore::append_exchange(const std::string& session_id, ChatTurn user,
                                      ChatTurn reply) {
  Entry& e = entry(session_id);
  std::lock_guard lock(e.mutex);
  TimestampMs ts = clock();
  if (!e.session.turns.empty()) ts = std::max(ts, e.session.turns.back().timestamp);
  user.timestamp = ts;
  reply.timestamp = ts;
  validate_turn(user);
  validate_turn(reply);
  const std::size_t before = e.session.turns.size();
  try {
    append_locked(e, std::move(user));
    append_locked(e, std::move(reply));
  } catch (...) {
    e.session.turns.resize(before);
    throw;
  }
  write_journal(session_id, e.session.turns[before]);
  write_journal(session_id, e.session.turns[before + 1]);
  return e.session;
}

Session SessionStore::get(const std::string& session_id) const {
  const Entry& e = entry(session_id);
  std::lock_guard lock(e.mutex);
  return e.session;
}

bool SessionStore::contains(const std::string& session_id) const {
  std::shared_lock lock(map_mutex_);
  return sessions_.count(session_id) != 0;
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(map_mutex_);
  return sessions_.size();
}

void SessionStore::write_journal(const std::string& session_id, const ChatTurn& turn) {
  if (!journal_out_.is_open()) return;
  nlohmann::ordered_json line;
  line["session_id"] = session_id;
  line["role"] = to_string(turn.role);
  line["text"] = turn.text;
  line["ts"] = turn.timestamp;
  if (turn.refused) line["refused"] = true;
  std::lock_guard lock(journal_mutex_);
  journal_out_ << line.dump() << '\n';
  journal_out_.flush();
}

std::size_t SessionStore::recover(const std::filesystem::path& journal) {
  std::ifstream in(journal, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read session journal " + journal.string());
  std::size_t restored = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ChatTurn turn;
    std::string id;
    try {
      const auto j = nlohmann::json::parse(line);
      id = j.at("session_id").get<std::string>();
      const auto role = parse_role(j.at("role").get<std::string>());
      if (!role) throw Error(ErrorKind::format, "bad role");
      turn.role = *role;
      turn.text = j.at("text").get<std::string>();
      turn.timestamp = j.at("ts").get<TimestampMs>();
      turn.refused = j.value("refused", false);
    } catch (const std::exception& ex) {
      throw Error(ErrorKind::format, journal.string() + ":" + std::to_string(line_no) +
                                         ": malformed journal line: " + ex.what());
    }
    std::unique_lock lock(map_mutex_);
    auto& slot = sessions_[id];
    if (!slot) {
      slot = std::make_unique<Entry>();
      slot->session.id = id;
      slot->session.created_at = turn.timestamp;
    }
    std::lock_guard entry_lock(slot->mutex);
    append_locked(*slot, std::move(turn));
    ++restored;
  }
  return restored;
}

}  // namespace edupsy
