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


#ifndef BFTLOG_REPLICA_HPP_
#define BFTLOG_REPLICA_HPP_

#include <map>
#include <span>
#include <vector>

#include "bftlog/counter_rng.hpp"
#include "bftlog/frontier_crdt.hpp"
#include "bftlog/scenario.hpp"

namespace bftlog {

struct ReplicaCounters {
  std::size_t accepted_messages = 0;
  std::size_t rejected_messages = 0;
  std::size_t missing_dependencies = 0;
  std::size_t rejected_logs = 0;
  std::size_t rejected_records = 0;
};

/// One replica's whole view. Byzantine replicas keep state like correct
/// ones; their behavior only changes what they offer to peers.
struct Replica {
  int id = 0;
  ReplicaBehavior behavior = ReplicaBehavior::kCorrect;
  double forward_probability = 1.0;

  MessageStore store;
  Frontier frontier;
  /// First correctly signed but invalid message seen per author.
  std::map<Author, Message> misbehavior;
  ReplicaCounters counters;

  Replica(int id, ReplicaBehavior behavior, double forward_probability, bool strict_m7)
      : id(id), behavior(behavior), forward_probability(forward_probability), store(strict_m7) {}

  bool correct() const { return behavior == ReplicaBehavior::kCorrect; }
};

/// What a sender hands to a receiver in one sync.
struct SyncOffer {
  std::vector<Message> messages;  ///< topological order
  std::vector<Message> records;
  std::vector<Log> logs;
};

/// A new local message by its author: stores it, then appends it to the
/// author's log. `history` holds the message's not-yet-known ancestors in
/// topological order and is inserted first.
void deliver(Replica& replica, std::span<const Message> history, const Message& m);

/// Inserts offered messages in order. A correctly signed message that fails
/// M2, M3, M4 or M7 becomes the author's misbehavior record if none exists.
void receive_messages(Replica& replica, std::span<const Message> messages);

/// Keeps a record only if it verifies and is rejected by the store for one
/// of the misbehavior reasons.
void receive_records(Replica& replica, std::span<const Message> records);

/// Joins every log that passes check_log; counts the rest.
void receive_logs(Replica& replica, std::span<const Log> logs);

/// Everything in messages(frontier) plus the ancestry of misbehavior
/// records that the receiver lacks, the records, and the logs. Omitting
/// senders offer nothing; partial senders drop each item independently.
SyncOffer make_offer(const Replica& sender, const Replica& receiver, CounterRng& rng);

/// receiver <- sender.
void sync(Replica& receiver, const Replica& sender, CounterRng& rng);

}  // namespace bftlog

#endif  // BFTLOG_REPLICA_HPP_
