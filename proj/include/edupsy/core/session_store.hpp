// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>

#include "edupsy/core/types.hpp"

namespace edupsy {

struct SessionStoreOptions {
  std::function<TimestampMs()> clock;     // defaults to wall clock
  std::optional<std::uint64_t> id_seed;   // fixed seed gives reproducible ids
  std::filesystem::path journal;          // append-only JSONL, empty = memory only
};

/// In-memory session store. Safe for concurrent use; appends to one session
/// are serialized, appends to distinct sessions proceed independently.
class SessionStore {
 public:
  explicit SessionStore(SessionStoreOptions options = {});
  ~SessionStore();

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  Session create_session();

  /// A zero timestamp is stamped from the store clock. Throws not_found for an
  /// unknown id and validation for empty text, out-of-order timestamps or a
  /// broken user/assistant alternation.
  Session append_turn(const std::string& session_id, ChatTurn turn);

  /// Appends a user turn and its reply atomically, so concurrent requests on
  /// one session cannot interleave halves of two exchanges.
  Session append_exchange(const std::string& session_id, ChatTurn user, ChatTurn reply);

  Session get(const std::string& session_id) const;
  bool contains(const std::string& session_id) const;
  std::size_t size() const;

  /// Replays a journal written by a previous store. Returns the number of
  /// turns restored. Journal writes are suppressed during replay.
  std::size_t recover(const std::filesystem::path& journal);

 private:
  struct Entry {
    mutable std::mutex mutex;
    Session session;
  };

  Entry& entry(const std::string& session_id) const;
  TimestampMs clock() const;
  std::string next_id();
  void append_locked(Entry& e, ChatTurn turn);
  void write_journal(const std::string& session_id, const ChatTurn& turn);

  SessionStoreOptions options_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::unique_ptr<Entry>> sessions_;
  std::mutex id_mutex_;
  std::mt19937_64 id_rng_;
  std::mutex journal_mutex_;
  std::ofstream journal_out_;
};

}  // namespace edupsy
