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

#include "bftlog/message_graph.hpp"

#include <set>
#include <string>

namespace bftlog {

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::kM5: return "M5";
    case Violation::kMissingDependency: return "MissingDependency";
    case Violation::kM2: return "M2";
    case Violation::kM3: return "M3";
    case Violation::kM4: return "M4";
    case Violation::kM7: return "M7";
  }
  return "?";
}

std::uint32_t MessageStore::slot(const Digest& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownMessageError("unknown message " + id.hex());
  return it->second;
}

const Message* MessageStore::find(const Digest& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &entries_[it->second].message;
}

const Message& MessageStore::get(const Digest& id) const { return entries_[slot(id)].message; }

std::vector<Digest> MessageStore::ids() const {
  std::vector<Digest> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.id);
  return out;
}

std::vector<Digest> MessageStore::ids_by_author(const Author& author) const {
  std::vector<Digest> out;
  if (auto it = by_author_.find(author); it != by_author_.end()) {
    for (auto s : it->second) out.push_back(entries_[s].id);
  }
  return out;
}

std::optional<Author> MessageStore::author_of(const MsgRef& x) const {
  if (!x) return std::nullopt;
  return entries_[slot(*x)].message.author;
}

std::optional<Violation> MessageStore::check(const Message& m) const {
  if (contains(msg_id(m))) return std::nullopt;
  if (!verify(m)) return Violation::kM5;

  const Entry* prev = nullptr;
  if (m.prev) {
    auto it = index_.find(*m.prev);
    if (it == index_.end()) return Violation::kMissingDependency;
    prev = &entries_[it->second];
  }
  for (const auto& d : m.deps) {
    if (!contains(d)) return Violation::kMissingDependency;
  }

  if (prev && prev->message.author != m.author) return Violation::kM2;

  std::set<Author> dep_authors;
  for (const auto& d : m.deps) {
    if (get(d).author == m.author) return Violation::kM3;
  }
  for (const auto& d : m.deps) {
    if (!dep_authors.insert(get(d).author).second) return Violation::kM4;
  }

  if (strict_ && prev) {
    // For each dep author, the nearest earlier message on the chain that
    // also depends on that author must depend on something <=_M ours.
    // Earlier ones are covered by induction since they were checked too.
    for (const auto& d : m.deps) {
      const Author& dep_author = get(d).author;
      for (const Entry* cur = prev; cur != nullptr;
           cur = cur->prev_slot ? &entries_[*cur->prev_slot] : nullptr) {
        const Digest* older = nullptr;
        for (const auto& od : cur->message.deps) {
          if (get(od).author == dep_author) older = &od;
        }
        if (older) {
          if (!leq_m(*older, d)) return Violation::kM7;
          break;
        }
      }
    }
  }
  return std::nullopt;
}

InsertResult MessageStore::insert(const Message& m) {
  Digest id = msg_id(m);
  if (contains(id)) return {InsertResult::Status::kAlreadyPresent, id, std::nullopt};
  if (auto v = check(m)) return {InsertResult::Status::kRejected, id, v};

  auto s = static_cast<std::uint32_t>(entries_.size());
  Entry e{m, id, 1, std::nullopt, std::vector<std::uint64_t>(s / 64 + 1, 0)};
  auto absorb = [&e](const Entry& other) {
    for (std::size_t i = 0; i < other.history.size(); ++i) e.history[i] |= other.history[i];
  };
  if (m.prev) {
    auto ps = index_.at(*m.prev);
    e.prev_slot = ps;
    e.depth = entries_[ps].depth + 1;
    absorb(entries_[ps]);
  }
  for (const auto& d : m.deps) absorb(entries_[index_.at(d)]);
  e.history[s / 64] |= std::uint64_t{1} << (s % 64);

  entries_.push_back(std::move(e));
  index_.emplace(id, s);
  by_author_[m.author].push_back(s);
  return {InsertResult::Status::kAccepted, id, std::nullopt};
}

bool MessageStore::history_has(const Entry& e, std::uint32_t s) const {
  return s / 64 < e.history.size() && ((e.history[s / 64] >> (s % 64)) & 1) != 0;
}

std::uint32_t MessageStore::ancestor_at_depth(std::uint32_t from, std::uint32_t depth) const {
  while (entries_[from].depth > depth) from = *entries_[from].prev_slot;
  return from;
}

void MessageStore::require_same_author(const MsgRef& x, const MsgRef& y, const char* op) const {
  if (!x || !y) return;
  if (get(*x).author != get(*y).author) {
    throw AuthorMismatchError(std::string(op) + ": messages of different authors");
  }
}

bool MessageStore::happens_before(const MsgRef& x, const MsgRef& y) const {
  if (!y) return false;
  auto sy = slot(*y);
  if (!x) return true;
  auto sx = slot(*x);
  return sx != sy && history_has(entries_[sy], sx);
}

bool MessageStore::leq_m(const MsgRef& x, const MsgRef& y) const {
  if (x == y) {
    if (x) slot(*x);
    return true;
  }
  return happens_before(x, y);
}

bool MessageStore::concurrent_m(const MsgRef& x, const MsgRef& y) const {
  return !leq_m(x, y) && !leq_m(y, x);
}

DigestSet MessageStore::causal_history(const MsgRef& x) const {
  DigestSet out;
  if (!x) return out;
  const Entry& e = entries_[slot(*x)];
  for (std::size_t w = 0; w < e.history.size(); ++w) {
    auto bits = e.history[w];
    while (bits != 0) {
      auto b = static_cast<std::size_t>(__builtin_ctzll(bits));
      out.insert(entries_[w * 64 + b].id);
      bits &= bits - 1;
    }
  }
  return out;
}

bool MessageStore::log_happens_before(const MsgRef& x, const MsgRef& y) const {
  if (!y) {
    if (x) slot(*x);
    return false;
  }
  auto sy = slot(*y);
  if (!x) return true;
  auto sx = slot(*x);
  const Entry& ex = entries_[sx];
  const Entry& ey = entries_[sy];
  if (ex.message.author != ey.message.author || ex.depth >= ey.depth) return false;
  return ancestor_at_depth(sy, ex.depth) == sx;
}

bool MessageStore::leq_log(const MsgRef& x, const MsgRef& y) const {
  if (x == y) {
    if (x) slot(*x);
    return true;
  }
  return log_happens_before(x, y);
}

bool MessageStore::concurrent_log(const MsgRef& x, const MsgRef& y) const {
  return !leq_log(x, y) && !leq_log(y, x);
}

DigestSet MessageStore::log_history(const MsgRef& x) const {
  DigestSet out;
  if (!x) return out;
  std::optional<std::uint32_t> cur = slot(*x);
  while (cur) {
    out.insert(entries_[*cur].id);
    cur = entries_[*cur].prev_slot;
  }
  return out;
}

DigestSet MessageStore::log_range(const MsgRef& from, const MsgRef& to) const {
  require_same_author(from, to, "log_range");
  DigestSet out = log_history(to);
  for (const auto& d : log_history(from)) out.erase(d);
  return out;
}

MsgRef MessageStore::log_prefix(const MsgRef& x, const MsgRef& y) const {
  if (x) slot(*x);
  if (y) slot(*y);
  require_same_author(x, y, "log_prefix");
  if (!x || !y) return std::nullopt;
  auto sx = slot(*x);
  auto sy = slot(*y);
  auto d = std::min(entries_[sx].depth, entries_[sy].depth);
  sx = ancestor_at_depth(sx, d);
  sy = ancestor_at_depth(sy, d);
  while (sx != sy) {
    if (!entries_[sx].prev_slot) return std::nullopt;
    sx = *entries_[sx].prev_slot;
    sy = *entries_[sy].prev_slot;
  }
  return entries_[sx].id;
}

DigestSet MessageStore::fork_proof(const MsgRef& x, const MsgRef& y) const {
  MsgRef p = log_prefix(x, y);
  std::uint32_t child_depth = p ? entries_[slot(*p)].depth + 1 : 1;
  DigestSet out;
  for (const auto& end : {x, y}) {
    if (!end || end == p) continue;
    out.insert(entries_[ancestor_at_depth(slot(*end), child_depth)].id);
  }
  return out;
}

}  // namespace bftlog
