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

#ifndef BFTLOG_FRONTIER_CRDT_HPP_
#define BFTLOG_FRONTIER_CRDT_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bftlog/log_crdt.hpp"

namespace bftlog {

/// A replica's set of logs, at most one per author. Keyed by author
/// internally, so "at most one log per author" holds by construction.
class Frontier {
 public:
  Frontier() = default;

  /// nullopt when two logs share an author.
  static std::optional<Frontier> from_logs(std::span<const Log> logs);

  const std::map<Author, Log>& logs() const { return logs_; }
  const Log* find(const Author& author) const;
  std::size_t size() const { return logs_.size(); }
  bool empty() const { return logs_.empty(); }

  bool operator==(const Frontier&) const = default;

 private:
  friend struct FrontierAccess;
  std::map<Author, Log> logs_;
};

Frontier initialize_frontier();

/// Union of the causal histories of every last and every fork member.
DigestSet frontier_messages(const MessageStore& store, const Frontier& frontier);

struct UpdateResult {
  Frontier frontier;
  /// Set when the incoming log failed validation; frontier is then unchanged.
  std::optional<LogValidityReport> rejected;

  bool accepted() const { return !rejected.has_value(); }
};

/// Joins `log` into the frontier's log of the same author, or adds it.
/// Invalid logs are rejected with their report.
UpdateResult frontier_update(const MessageStore& store, const Frontier& frontier, const Log& log);

bool frontier_leq(const MessageStore& store, const Frontier& a, const Frontier& b,
                  LogOrderRule rule = LogOrderRule::kStandard);

Frontier frontier_join(const MessageStore& store, const Frontier& a, const Frontier& b);

struct FrontierValidityReport {
  bool valid = true;
  std::vector<std::pair<Author, LogValidityReport>> invalid_logs;
};

FrontierValidityReport check_frontier(const MessageStore& store, const Frontier& frontier);

/// Same authors and pairwise log_equivalent logs.
bool frontier_equivalent(const Frontier& a, const Frontier& b);

/// Canonical text form, one line per log in author order:
///   <author> growing <last|->
///   <author> shrinking <last|-> <fork>,<fork>...
/// Equal snapshots iff equal frontiers.
std::string snapshot(const Frontier& frontier);

}  // namespace bftlog

#endif  // BFTLOG_FRONTIER_CRDT_HPP_
