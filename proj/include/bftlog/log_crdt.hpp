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

#ifndef BFTLOG_LOG_CRDT_HPP_
#define BFTLOG_LOG_CRDT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "bftlog/message_graph.hpp"

namespace bftlog {

/// Per-author two-phase log state.
///
/// Growing phase: `forks` is empty and `last` is the newest message of a
/// strict sequence. Shrinking phase: `forks` holds at least two messages
/// whose prev is `last`, proving the author forked right after `last`.
/// Once shrinking, a log never grows again; `last` can only move towards
/// the root. Members are digests resolved through a MessageStore.
struct Log {
  Author author;
  MsgRef last;
  DigestSet forks;

  bool growing() const { return forks.empty(); }
  bool shrinking() const { return !forks.empty(); }

  bool operator==(const Log&) const = default;
};

enum class LogProperty { kCL1, kCL2, kCL3, kFL1, kFL2, kFL3, kFL4, kFL5, kFL6, kFL7 };

std::string_view to_string(LogProperty p);

struct LogValidityReport {
  bool valid = true;
  std::vector<LogProperty> violated;

  bool violates(LogProperty p) const;
  std::string describe() const;
};

/// How a growing state compares against a shrinking one.
///
/// kStandard: growing L <= shrinking L' iff L.last and L'.last lie on one
/// prev-chain. This is exactly the order induced by log_join
/// (L <= L' iff log_join(L, L') is equivalent to L'), so the join is a
/// least upper bound.
///
/// kUnconditionalPhase: every growing state is below every shrinking
/// state. Still a partial order with the join as an upper bound, but not
/// the least one: growing a2' vs shrinking a2 (fork after a2) has the
/// shrinking state itself as least upper bound while the join shrinks to a1.
///
/// kFlippedPhase: growing is never below shrinking. Not a valid order for
/// this join; exists to check that the lattice oracle catches it.
enum class LogOrderRule { kStandard, kUnconditionalPhase, kFlippedPhase };

Log initialize_log(const Author& author);

/// Local append of a stored message by the log's author. Throws
/// UnknownMessageError if m is not stored and AuthorMismatchError if it was
/// written by someone else. The input log must be valid.
Log append(const MessageStore& store, const Log& log, const Digest& m);

/// Throws AuthorMismatchError across authors.
bool log_leq(const MessageStore& store, const Log& a, const Log& b,
             LogOrderRule rule = LogOrderRule::kStandard);

/// Least upper bound of two valid logs of the same author. Throws
/// AuthorMismatchError across authors.
Log log_join(const MessageStore& store, const Log& a, const Log& b);

/// Checks CL1-CL3 for growing states and FL1-FL7 for shrinking ones and
/// reports every violated label. Hostile states are fine here.
LogValidityReport check_log(const MessageStore& store, const Log& log);

/// State equality up to the fork set: same author, phase and last. Two
/// shrinking states with equal last are mutually <= whatever their proofs.
bool log_equivalent(const Log& a, const Log& b);

/// Optional proof compaction: keeps the two fork members with the lowest
/// digests. Any two members sharing `last` as prev are a complete proof.
Log keep_two_forks(const Log& log);

/// `author-hex [growing last=<id>]` or
/// `author-hex [shrinking last=<id> forks={<id>,<id>}]`; bottom prints as -.
std::string render(const Log& log);

}  // namespace bftlog

#endif  // BFTLOG_LOG_CRDT_HPP_
