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


#include "bftlog/replica.hpp"

namespace bftlog {

namespace {

bool is_misbehavior(Violation v) {
  return v == Violation::kM2 || v == Violation::kM3 || v == Violation::kM4 || v == Violation::kM7;
}

void keep_record(Replica& replica, const Message& m, const InsertResult& r) {
  if (r.rejected() && is_misbehavior(*r.reason)) replica.misbehavior.try_emplace(m.author, m);
}

}  // namespace

void deliver(Replica& replica, std::span<const Message> history, const Message& m) {
  receive_messages(replica, history);
  auto r = replica.store.insert(m);
  if (r.rejected()) {
    ++replica.counters.rejected_messages;
    keep_record(replica, m, r);
    return;
  }
  if (r.accepted()) ++replica.counters.accepted_messages;
  const Log* current = replica.frontier.find(m.author);
  Log log = append(replica.store, current ? *current : initialize_log(m.author), r.id);
  replica.frontier = frontier_update(replica.store, replica.frontier, log).frontier;
}

void receive_messages(Replica& replica, std::span<const Message> messages) {
  for (const auto& m : messages) {
    auto r = replica.store.insert(m);
    if (r.accepted()) {
      ++replica.counters.accepted_messages;
    } else if (r.rejected()) {
      ++replica.counters.rejected_messages;
      if (r.reason == Violation::kMissingDependency) ++replica.counters.missing_dependencies;
      keep_record(replica, m, r);
    }
  }
}

void receive_records(Replica& replica, std::span<const Message> records) {
  for (const auto& m : records) {
    if (replica.misbehavior.contains(m.author)) continue;
    auto reason = replica.store.check(m);
    if (reason && is_misbehavior(*reason)) {
      replica.misbehavior.emplace(m.author, m);
    } else {
      ++replica.counters.rejected_records;
    }
  }
}

void receive_logs(Replica& replica, std::span<const Log> logs) {
  for (const auto& log : logs) {
    auto r = frontier_update(replica.store, replica.frontier, log);
    if (r.accepted()) {
      replica.frontier = std::move(r.frontier);
    } else {
      ++replica.counters.rejected_logs;
    }
  }
}

SyncOffer make_offer(const Replica& sender, const Replica& receiver, CounterRng& rng) {
  SyncOffer offer;
  if (sender.behavior == ReplicaBehavior::kOmit) return offer;
  const bool partial = sender.behavior == ReplicaBehavior::kPartial;
  auto forward = [&] { return !partial || rng.chance(sender.forward_probability); };

  DigestSet wanted = frontier_messages(sender.store, sender.frontier);
  for (const auto& [author, record] : sender.misbehavior) {
    if (record.prev) wanted.merge(sender.store.causal_history(record.prev));
    for (const auto& d : record.deps) wanted.merge(sender.store.causal_history(d));
  }
  for (const auto& id : sender.store.ids()) {
    if (wanted.contains(id) && !receiver.store.contains(id) && forward()) {
      offer.messages.push_back(sender.store.get(id));
    }
  }
  for (const auto& [author, record] : sender.misbehavior) {
    if (forward()) offer.records.push_back(record);
  }
  for (const auto& [author, log] : sender.frontier.logs()) {
    if (forward()) offer.logs.push_back(log);
  }
  return offer;
}

void sync(Replica& receiver, const Replica& sender, CounterRng& rng) {
  SyncOffer offer = make_offer(sender, receiver, rng);
  receive_messages(receiver, offer.messages);
  receive_records(receiver, offer.records);
  receive_logs(receiver, offer.logs);
}

}  // namespace bftlog
