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

#include "bftlog/frontier_crdt.hpp"

namespace bftlog {

struct FrontierAccess {
  static std::map<Author, Log>& logs(Frontier& f) { return f.logs_; }
};

std::optional<Frontier> Frontier::from_logs(std::span<const Log> logs) {
  Frontier out;
  for (const auto& log : logs) {
    if (!out.logs_.emplace(log.author, log).second) return std::nullopt;
  }
  return out;
}

const Log* Frontier::find(const Author& author) const {
  auto it = logs_.find(author);
  return it == logs_.end() ? nullptr : &it->second;
}

Frontier initialize_frontier() { return Frontier{}; }

DigestSet frontier_messages(const MessageStore& store, const Frontier& frontier) {
  DigestSet out;
  for (const auto& [author, log] : frontier.logs()) {
    out.merge(store.causal_history(log.last));
    for (const auto& f : log.forks) out.merge(store.causal_history(f));
  }
  return out;
}

UpdateResult frontier_update(const MessageStore& store, const Frontier& frontier, const Log& log) {
  auto report = check_log(store, log);
  if (!report.valid) return {frontier, std::move(report)};
  Frontier out = frontier;
  auto& logs = FrontierAccess::logs(out);
  if (auto it = logs.find(log.author); it != logs.end()) {
    it->second = log_join(store, log, it->second);
  } else {
    logs.emplace(log.author, log);
  }
  return {std::move(out), std::nullopt};
}

bool frontier_leq(const MessageStore& store, const Frontier& a, const Frontier& b,
                  LogOrderRule rule) {
  for (const auto& [author, log] : a.logs()) {
    const Log* other = b.find(author);
    if (other == nullptr || !log_leq(store, log, *other, rule)) return false;
  }
  return true;
}

Frontier frontier_join(const MessageStore& store, const Frontier& a, const Frontier& b) {
  Frontier out = a;
  auto& logs = FrontierAccess::logs(out);
  for (const auto& [author, log] : b.logs()) {
    if (auto it = logs.find(author); it != logs.end()) {
      it->second = log_join(store, it->second, log);
    } else {
      logs.emplace(author, log);
    }
  }
  return out;
}

FrontierValidityReport check_frontier(const MessageStore& store, const Frontier& frontier) {
  FrontierValidityReport report;
  for (const auto& [author, log] : frontier.logs()) {
    auto r = check_log(store, log);
    if (!r.valid) report.invalid_logs.emplace_back(author, std::move(r));
  }
  report.valid = report.invalid_logs.empty();
  return report;
}

bool frontier_equivalent(const Frontier& a, const Frontier& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [author, log] : a.logs()) {
    const Log* other = b.find(author);
    if (other == nullptr || !log_equivalent(log, *other)) return false;
  }
  return true;
}

std::string snapshot(const Frontier& frontier) {
  std::string out;
  for (const auto& [author, log] : frontier.logs()) {
    out += author.hex();
    out += log.growing() ? " growing " : " shrinking ";
    out += ref_hex(log.last);
    if (log.shrinking()) {
      char sep = ' ';
      for (const auto& f : log.forks) {
        out += sep;
        out += f.hex();
        sep = ',';
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace bftlog
