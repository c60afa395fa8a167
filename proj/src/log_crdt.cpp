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

#include "bftlog/log_crdt.hpp"

#include <algorithm>
#include <array>

namespace bftlog {

std::string_view to_string(LogProperty p) {
  static constexpr std::array<std::string_view, 10> kNames = {
      "CL1", "CL2", "CL3", "FL1", "FL2", "FL3", "FL4", "FL5", "FL6", "FL7"};
  return kNames[static_cast<std::size_t>(p)];
}

bool LogValidityReport::violates(LogProperty p) const {
  return std::find(violated.begin(), violated.end(), p) != violated.end();
}

std::string LogValidityReport::describe() const {
  if (valid) return "valid";
  std::string out = "violates";
  for (auto p : violated) {
    out += ' ';
    out += to_string(p);
  }
  return out;
}

namespace {

void require_same_author(const Log& a, const Log& b, const char* op) {
  if (a.author != b.author) {
    throw AuthorMismatchError(std::string(op) + ": logs of different authors");
  }
}

}  // namespace

Log initialize_log(const Author& author) { return Log{author, std::nullopt, {}}; }

Log append(const MessageStore& store, const Log& log, const Digest& m) {
  const Message& message = store.get(m);
  if (message.author != log.author) {
    throw AuthorMismatchError("append: message " + m.hex() + " is not by the log's author");
  }
  if (log.growing()) {
    if (store.log_happens_before(log.last, m)) return Log{log.author, m, {}};
    if (store.leq_log(m, log.last)) return log;
  } else if (!store.concurrent_log(m, log.last)) {
    // A predecessor of last, or a message on some branch after last.
    return log;
  }
  // Either a first fork, or a fork that starts before the current last.
  return Log{log.author, store.log_prefix(log.last, m), store.fork_proof(log.last, m)};
}

bool log_leq(const MessageStore& store, const Log& a, const Log& b, LogOrderRule rule) {
  require_same_author(a, b, "log_leq");
  if (a.growing() && b.growing()) return store.leq_log(a.last, b.last);
  if (a.growing()) {
    switch (rule) {
      case LogOrderRule::kStandard:
        return store.leq_log(a.last, b.last) || store.leq_log(b.last, a.last);
      case LogOrderRule::kUnconditionalPhase:
        return true;
      case LogOrderRule::kFlippedPhase:
        return false;
    }
  }
  if (b.growing()) return false;
  // Both shrinking: the one that shrank further is larger.
  return store.leq_log(b.last, a.last);
}

Log log_join(const MessageStore& store, const Log& a, const Log& b) {
  require_same_author(a, b, "log_join");
  if (!store.concurrent_log(a.last, b.last)) {
    if (a.growing() && b.growing()) return store.leq_log(a.last, b.last) ? b : a;
    if (b.growing()) return a;
    if (a.growing()) return b;
  }
  Log out{a.author, store.log_prefix(a.last, b.last), {}};
  auto keep = [&](const Digest& m) {
    if (store.get(m).prev == out.last) out.forks.insert(m);
  };
  for (const auto& m : store.fork_proof(a.last, b.last)) keep(m);
  for (const auto& m : a.forks) keep(m);
  for (const auto& m : b.forks) keep(m);
  return out;
}

LogValidityReport check_log(const MessageStore& store, const Log& log) {
  LogValidityReport report;
  auto flag = [&report](LogProperty p) {
    if (!report.violates(p)) report.violated.push_back(p);
  };

  const bool shrinking = log.shrinking();
  const Message* last = log.last ? store.find(*log.last) : nullptr;
  if (log.last && last == nullptr) {
    flag(shrinking ? LogProperty::kFL2 : LogProperty::kCL2);
  } else if (last != nullptr && last->author != log.author) {
    flag(shrinking ? LogProperty::kFL3 : LogProperty::kCL3);
  }

  if (shrinking) {
    std::vector<const Message*> members;
    for (const auto& f : log.forks) {
      const Message* m = store.find(f);
      if (m == nullptr) {
        flag(LogProperty::kFL4);
        continue;
      }
      members.push_back(m);
      if (m->author != log.author) flag(LogProperty::kFL5);
      if (m->prev != log.last) flag(LogProperty::kFL7);
    }
    for (const Message* m : members) {
      bool sibling = std::any_of(members.begin(), members.end(), [m](const Message* o) {
        return o != m && o->prev == m->prev;
      });
      if (!sibling) flag(LogProperty::kFL6);
    }
  }

  std::sort(report.violated.begin(), report.violated.end());
  report.valid = report.violated.empty();
  return report;
}

bool log_equivalent(const Log& a, const Log& b) {
  return a.author == b.author && a.growing() == b.growing() && a.last == b.last;
}

Log keep_two_forks(const Log& log) {
  if (log.forks.size() <= 2) return log;
  Log out{log.author, log.last, {}};
  auto it = log.forks.begin();
  out.forks.insert(*it++);
  out.forks.insert(*it);
  return out;
}

std::string render(const Log& log) {
  std::string out = log.author.hex();
  if (log.growing()) {
    out += " [growing last=" + ref_hex(log.last) + "]";
    return out;
  }
  out += " [shrinking last=" + ref_hex(log.last) + " forks={";
  bool first = true;
  for (const auto& f : log.forks) {
    if (!first) out += ',';
    out += f.hex();
    first = false;
  }
  out += "}]";
  return out;
}

}  // namespace bftlog
