//  Copyright 2026 The bftlog Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef BFTLOG_MESSAGE_GRAPH_HPP_
#define BFTLOG_MESSAGE_GRAPH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bftlog/errors.hpp"
#include "bftlog/message.hpp"

namespace bftlog {

/// Why a message was refused. Checked in this order: kM5 (signature, needs
/// no store), kMissingDependency (prev or a dep not stored yet, which
/// covers the existence half of M1/M3), kM2, kM3, kM4, kM7.
enum class Violation {
  kM5,
  kMissingDependency,
  kM2,
  kM3,
  kM4,
  kM7,
};

std::string_view to_string(Violation v);

struct InsertResult {
  enum class Status { kAccepted, kAlreadyPresent, kRejected };

  Status status;
  Digest id;
  std::optional<Violation> reason;

  bool accepted() const { return status == Status::kAccepted; }
  bool rejected() const { return status == Status::kRejected; }
};

/// Append-only, content-addressed store of validated messages.
///
/// Messages are only accepted once everything they reference is already
/// stored, so insertion order is a topological order and the graph is
/// acyclic by construction. Every query below takes references that must
/// name stored messages (std::nullopt is the bottom element) and throws
/// UnknownMessageError otherwise.
///
/// Const member functions never mutate state and may run concurrently;
/// insert() requires exclusive access.
class MessageStore {
 public:
  explicit MessageStore(bool strict_monotonic_deps = false)
      : strict_(strict_monotonic_deps) {}

  InsertResult insert(const Message& m);

  /// Validation without insertion. Returns nullopt if m would be accepted
  /// (or is already present).
  std::optional<Violation> check(const Message& m) const;

  bool strict() const { return strict_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(const Digest& id) const { return index_.contains(id); }
  const Message* find(const Digest& id) const;
  const Message& get(const Digest& id) const;

  /// Digests in insertion (topological) order.
  std::vector<Digest> ids() const;
  std::vector<Digest> ids_by_author(const Author& author) const;
  /// Position in insertion order.
  std::size_t position(const Digest& id) const { return slot(id); }
  /// Number of messages on the prev-chain ending at id, id included.
  std::size_t depth(const Digest& id) const { return entries_[slot(id)].depth; }

  // Happens-before over prev and deps edges, with bottom preceding everything.
  bool happens_before(const MsgRef& x, const MsgRef& y) const;
  bool leq_m(const MsgRef& x, const MsgRef& y) const;
  bool concurrent_m(const MsgRef& x, const MsgRef& y) const;
  /// { z : z <=_M x }; empty for bottom.
  DigestSet causal_history(const MsgRef& x) const;

  // Same relations restricted to prev edges. Messages of different authors
  // are unrelated (false, never an error).
  bool log_happens_before(const MsgRef& x, const MsgRef& y) const;
  bool leq_log(const MsgRef& x, const MsgRef& y) const;
  bool concurrent_log(const MsgRef& x, const MsgRef& y) const;
  DigestSet log_history(const MsgRef& x) const;

  /// ]from, to]: log_history(to) minus log_history(from).
  /// Throws AuthorMismatchError when both are messages of different authors.
  DigestSet log_range(const MsgRef& from, const MsgRef& to) const;

  /// Greatest common prefix of two prev-chains of one author; bottom when
  /// the chains share no message. Throws AuthorMismatchError across authors.
  MsgRef log_prefix(const MsgRef& x, const MsgRef& y) const;

  /// { m in ]P,x] u ]P,y] : m.prev = P } with P = log_prefix(x, y). On
  /// non-concurrent inputs this is the literal (possibly singleton) set.
  DigestSet fork_proof(const MsgRef& x, const MsgRef& y) const;

  /// Author of a reference, nullopt for bottom.
  std::optional<Author> author_of(const MsgRef& x) const;

 private:
  struct Entry {
    Message message;
    Digest id;
    std::uint32_t depth;
    std::optional<std::uint32_t> prev_slot;
    // Bit i set iff the message at slot i is in this message's causal
    // history (self included).
    std::vector<std::uint64_t> history;
  };

  std::uint32_t slot(const Digest& id) const;
  bool history_has(const Entry& e, std::uint32_t s) const;
  // Walks the prev-chain of `from` up to the given depth.
  std::uint32_t ancestor_at_depth(std::uint32_t from, std::uint32_t depth) const;
  void require_same_author(const MsgRef& x, const MsgRef& y, const char* op) const;

  bool strict_;
  std::vector<Entry> entries_;
  std::unordered_map<Digest, std::uint32_t> index_;
  std::map<Author, std::vector<std::uint32_t>> by_author_;
};

}  // namespace bftlog

#endif  // BFTLOG_MESSAGE_GRAPH_HPP_
