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


#include "bftlog/lattice_oracle.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace bftlog {

namespace {

constexpr std::size_t kMaxFrontierSpace = 20000;
constexpr std::size_t kCasesPerStore = 25;

std::string short_hex(const MsgRef& ref) { return ref ? ref->hex().substr(0, 8) : "-"; }

std::string shape_text(std::span<const int> parents) {
  std::string out = "[";
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parents[i]);
  }
  return out + "]";
}

std::string brief(const Log& log) {
  std::string out = log.growing() ? "G(" : "S(";
  out += short_hex(log.last);
  if (log.shrinking()) {
    out += ";";
    for (const auto& f : log.forks) out += ' ' + short_hex(f);
  }
  return out + ")";
}

std::string brief(const Frontier& frontier) {
  std::string out = "{";
  for (const auto& [author, log] : frontier.logs()) out += author.hex().substr(0, 4) + ':' + brief(log) + ' ';
  return out + "}";
}

MessageStore store_of(std::span<const Message> messages) {
  MessageStore store;
  for (const auto& m : messages) store.insert(m);
  return store;
}

}  // namespace

// ---------------------------------------------------------------------------
// GraphOracle

GraphOracle::GraphOracle(std::span<const Message> messages) {
  for (const auto& m : messages) messages_.emplace(msg_id(m), m);
}

bool GraphOracle::leq_m(const MsgRef& x, const MsgRef& y) const {
  if (!x) return true;
  if (!y) return false;
  std::vector<Digest> stack{*y};
  DigestSet seen;
  while (!stack.empty()) {
    Digest d = stack.back();
    stack.pop_back();
    if (d == *x) return true;
    if (!seen.insert(d).second) continue;
    const Message& m = messages_.at(d);
    if (m.prev) stack.push_back(*m.prev);
    stack.insert(stack.end(), m.deps.begin(), m.deps.end());
  }
  return false;
}

bool GraphOracle::leq_log(const MsgRef& x, const MsgRef& y) const {
  return !x || log_history(y).contains(*x);
}

DigestSet GraphOracle::history(const MsgRef& x) const {
  DigestSet out;
  for (const auto& [id, m] : messages_) {
    if (x && leq_m(id, x)) out.insert(id);
  }
  return out;
}

DigestSet GraphOracle::log_history(const MsgRef& x) const {
  DigestSet out;
  for (MsgRef cur = x; cur; cur = messages_.at(*cur).prev) out.insert(*cur);
  return out;
}

DigestSet GraphOracle::log_range(const MsgRef& from, const MsgRef& to) const {
  DigestSet out;
  DigestSet below = log_history(from);
  for (const auto& d : log_history(to)) {
    if (!below.contains(d)) out.insert(d);
  }
  return out;
}

MsgRef GraphOracle::log_prefix(const MsgRef& x, const MsgRef& y) const {
  DigestSet hx = log_history(x);
  MsgRef best;
  for (const auto& d : log_history(y)) {
    if (hx.contains(d) && leq_log(best, d)) best = d;
  }
  return best;
}

DigestSet GraphOracle::fork_proof(const MsgRef& x, const MsgRef& y) const {
  MsgRef p = log_prefix(x, y);
  DigestSet both = log_range(p, x);
  both.merge(log_range(p, y));
  DigestSet out;
  for (const auto& d : both) {
    if (messages_.at(d).prev == p) out.insert(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<std::vector<int>> forest_shapes(std::size_t n) {
  if (n == 0) return {{}};
  const std::size_t m = n + 1;
  // Level sequence of a rooted tree in preorder, root at level 0. Starts at
  // the path and steps to the next canonical sequence until the star.
  std::vector<int> level(m);
  for (std::size_t i = 0; i < m; ++i) level[i] = static_cast<int>(i);

  std::vector<std::vector<int>> out;
  while (true) {
    std::vector<int> parents(n);
    std::vector<std::size_t> last_at_level(m, 0);
    for (std::size_t i = 1; i < m; ++i) {
      std::size_t parent = last_at_level[level[i] - 1];
      parents[i - 1] = parent == 0 ? -1 : static_cast<int>(parent - 1);
      last_at_level[level[i]] = i;
    }
    out.push_back(std::move(parents));

    std::size_t p = m - 1;
    while (p > 0 && level[p] == 1) --p;
    if (p == 0) break;
    std::size_t q = p - 1;
    while (level[q] != level[p] - 1) --q;
    for (std::size_t i = p; i < m; ++i) level[i] = level[i - (p - q)];
  }
  return out;
}

std::vector<Message> build_forest(const Keypair& keys, std::span<const int> parents) {
  std::vector<Message> out;
  std::vector<Digest> ids;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    MsgRef prev;
    if (parents[i] >= 0) prev = ids[static_cast<std::size_t>(parents[i])];
    out.push_back(Message::create(keys, prev, {}, "n" + std::to_string(i)));
    ids.push_back(msg_id(out.back()));
  }
  return out;
}

std::vector<Log> enumerate_logs(const MessageStore& store, const Author& author) {
  const auto own = store.ids_by_author(author);
  std::vector<MsgRef> lasts{std::nullopt};
  lasts.insert(lasts.end(), own.begin(), own.end());

  std::vector<Log> out;
  for (const auto& last : lasts) {
    out.push_back(Log{author, last, {}});
    std::vector<Digest> children;
    for (const auto& id : own) {
      if (store.get(id).prev == last) children.push_back(id);
    }
    const std::size_t subsets = std::size_t{1} << children.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      if (std::popcount(mask) < 2) continue;
      Log log{author, last, {}};
      for (std::size_t i = 0; i < children.size(); ++i) {
        if ((mask >> i) & 1) log.forks.insert(children[i]);
      }
      out.push_back(std::move(log));
    }
  }
  return out;
}

const std::vector<Keypair>& oracle_keys(std::size_t count) {
  static const std::vector<Keypair> keys = [] {
    std::vector<Keypair> out;
    for (std::size_t i = 0; i < kMaxOracleAuthors; ++i) {
      out.push_back(Keypair::from_label("oracle/author-" + std::to_string(i)));
    }
    return out;
  }();
  if (count > keys.size()) throw std::invalid_argument("oracle supports at most 8 authors");
  return keys;
}

std::vector<Message> random_store_messages(CounterRng& rng, std::span<const Keypair> authors,
                                           std::size_t max_per_author) {
  std::vector<std::size_t> remaining(authors.size());
  std::size_t total = 0;
  for (auto& r : remaining) total += r = rng.below(max_per_author + 1);

  std::vector<Message> out;
  std::vector<std::vector<Digest>> own(authors.size());
  for (; total > 0; --total) {
    std::size_t pick = rng.below(total);
    std::size_t a = 0;
    while (pick >= remaining[a]) pick -= remaining[a++];
    --remaining[a];

    MsgRef prev;
    if (!own[a].empty() && !rng.chance(0.25)) prev = own[a][rng.below(own[a].size())];
    DigestSet deps;
    for (std::size_t b = 0; b < authors.size(); ++b) {
      if (b != a && !own[b].empty() && rng.chance(0.3)) deps.insert(own[b][rng.below(own[b].size())]);
    }
    out.push_back(Message::create(authors[a], prev, std::move(deps),
                                  "r" + std::to_string(out.size())));
    own[a].push_back(msg_id(out.back()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

OracleCheck& OracleReport::check(const std::string& name) {
  for (auto& c : checks) {
    if (c.name == name) return c;
  }
  OracleCheck fresh;
  fresh.name = name;
  checks.push_back(std::move(fresh));
  return checks.back();
}

void OracleReport::merge(const OracleReport& other) {
  for (const auto& c : other.checks) {
    OracleCheck& mine = check(c.name);
    mine.cases += c.cases;
    if (mine.failures == 0 && c.failures > 0) mine.first_failure = c.first_failure;
    mine.failures += c.failures;
  }
}

bool OracleReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

std::uint64_t OracleReport::cases() const {
  std::uint64_t n = 0;
  for (const auto& c : checks) n += c.cases;
  return n;
}

std::string OracleReport::summary() const {
  std::string out;
  for (const auto& c : checks) {
    out += c.passed() ? "ok   " : "FAIL ";
    out += c.name + " cases=" + std::to_string(c.cases);
    if (!c.passed()) out += " failures=" + std::to_string(c.failures) + " first: " + c.first_failure;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graph queries

namespace {

void compare_graph(std::span<const Message> messages, const std::string& label,
                   OracleReport& report) {
  MessageStore store;
  auto& inserts = report.check("graph.insert");
  for (const auto& m : messages) {
    inserts.expect(store.insert(m).accepted(), [&] { return label + " rejected a valid message"; });
  }
  GraphOracle oracle(messages);
  std::vector<MsgRef> refs{std::nullopt};
  for (const auto& id : store.ids()) refs.push_back(id);

  auto& queries = report.check("graph.queries");
  auto& laws = report.check("graph.order_laws");
  auto pair_text = [&](const MsgRef& x, const MsgRef& y) {
    return label + " x=" + short_hex(x) + " y=" + short_hex(y);
  };
  for (const auto& x : refs) {
    queries.expect(store.causal_history(x) == oracle.history(x), [&] { return "H " + pair_text(x, x); });
    queries.expect(store.log_history(x) == oracle.log_history(x),
                   [&] { return "H_log " + pair_text(x, x); });
    if (x) {
      laws.expect(store.leq_m(x, x) && store.leq_log(x, x) && !store.happens_before(x, x),
                  [&] { return "reflexivity " + pair_text(x, x); });
    }
    for (const auto& y : refs) {
      queries.expect(store.leq_m(x, y) == oracle.leq_m(x, y), [&] { return "leq_m " + pair_text(x, y); });
      queries.expect(store.leq_log(x, y) == oracle.leq_log(x, y),
                     [&] { return "leq_log " + pair_text(x, y); });
      if (x != y) {
        laws.expect(!(store.leq_m(x, y) && store.leq_m(y, x)) && !(store.leq_log(x, y) && store.leq_log(y, x)),
                    [&] { return "antisymmetry " + pair_text(x, y); });
      }
      auto ax = store.author_of(x);
      auto ay = store.author_of(y);
      if (!ax || !ay || *ax == *ay) {
        queries.expect(store.log_prefix(x, y) == oracle.log_prefix(x, y),
                       [&] { return "log_prefix " + pair_text(x, y); });
        queries.expect(store.fork_proof(x, y) == oracle.fork_proof(x, y),
                       [&] { return "fork_proof " + pair_text(x, y); });
        queries.expect(store.log_range(x, y) == oracle.log_range(x, y),
                       [&] { return "log_range " + pair_text(x, y); });
      }
      for (const auto& z : refs) {
        if (store.leq_m(x, y) && store.leq_m(y, z)) {
          laws.expect(store.leq_m(x, z), [&] { return "transitivity leq_m " + pair_text(x, z); });
        }
        if (store.leq_log(x, y) && store.leq_log(y, z)) {
          laws.expect(store.leq_log(x, z), [&] { return "transitivity leq_log " + pair_text(x, z); });
        }
      }
    }
  }
}

}  // namespace

OracleReport check_graph(std::size_t max_msgs, std::size_t max_authors, std::uint64_t seed) {
  OracleReport report;
  const Keypair& keys = oracle_keys(1)[0];
  for (std::size_t n = 0; n <= max_msgs; ++n) {
    for (const auto& shape : forest_shapes(n)) {
      compare_graph(build_forest(keys, shape), "forest " + shape_text(shape), report);
    }
  }
  if (max_authors >= 2) {
    const auto& keys_all = oracle_keys(max_authors);
    std::span<const Keypair> authors(keys_all.data(), max_authors);
    CounterRng rng(seed);
    for (int i = 0; i < 300; ++i) {
      auto messages = random_store_messages(rng, authors, max_msgs / max_authors);
      compare_graph(messages, "random store #" + std::to_string(i), report);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Log lattice

namespace {

std::string log_key(const Log& log) {
  std::string key = ref_hex(log.last);
  for (const auto& f : log.forks) key += f.hex();
  return key;
}

void check_log_space(const MessageStore& store, const Author& author, const std::string& label,
                     LogOrderRule rule, OracleReport& report) {
  const auto states = enumerate_logs(store, author);
  const std::size_t n = states.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(log_key(states[i]), i);

  auto& validity = report.check("log.validity");
  auto& order = report.check("log.order_laws");
  auto& laws = report.check("log.join_laws");
  auto& lub = report.check("log.least_upper_bound");
  auto& monotone = report.check("log.monotonicity");
  auto& trapdoor = report.check("log.phase_trapdoor");
  auto& direction = report.check("log.shrink_direction");

  validity.expect(check_log(store, initialize_log(author)).valid, [&] { return label + " initialize"; });
  for (const auto& s : states) {
    validity.expect(check_log(store, s).valid, [&] { return label + " enumerated " + brief(s); });
  }

  std::vector<std::vector<char>> leq(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = log_leq(store, states[i], states[j], rule);
  }

  // Join table as indices into the state space; npos when the join left it.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> join(n, std::vector<std::size_t>(n, npos));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Log joined = log_join(store, states[i], states[j]);
      auto it = index.find(log_key(joined));
      validity.expect(it != index.end() && check_log(store, joined).valid, [&] {
        return label + " join " + brief(states[i]) + " " + brief(states[j]) + " -> " + brief(joined);
      });
      if (it != index.end()) join[i][j] = it->second;
      for (std::size_t k : {i, j}) {
        if (states[k].shrinking()) {
          trapdoor.expect(joined.shrinking(), [&] { return label + " join regrew " + brief(states[k]); });
          direction.expect(store.leq_log(joined.last, states[k].last),
                           [&] { return label + " join moved last up from " + brief(states[k]); });
        }
      }
    }
  }

  auto pair_text = [&](std::size_t i, std::size_t j) {
    return label + " " + brief(states[i]) + " " + brief(states[j]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    order.expect(leq[i][i], [&] { return "reflexivity " + pair_text(i, i); });
    laws.expect(join[i][i] == i, [&] { return "idempotence " + pair_text(i, i); });
    for (std::size_t j = 0; j < n; ++j) {
      if (leq[i][j] && leq[j][i]) {
        order.expect(log_equivalent(states[i], states[j]), [&] { return "antisymmetry " + pair_text(i, j); });
      }
      const std::size_t ij = join[i][j];
      laws.expect(ij == join[j][i], [&] { return "commutativity " + pair_text(i, j); });
      if (ij == npos) continue;

      // Least upper bound by exhaustive search over the whole state space.
      bool upper = leq[i][ij] && leq[j][ij];
      bool least = true;
      for (std::size_t u = 0; u < n && least; ++u) {
        if (leq[i][u] && leq[j][u] && !leq[ij][u]) least = false;
      }
      lub.expect(upper && least, [&] {
        return pair_text(i, j) + " join " + brief(states[ij]) + (upper ? " not least" : " not an upper bound");
      });

      for (std::size_t k = 0; k < n; ++k) {
        if (leq[i][j] && leq[j][k]) {
          order.expect(leq[i][k], [&] { return "transitivity " + pair_text(i, k) + " via " + brief(states[j]); });
        }
        const std::size_t jk = join[j][k];
        if (jk == npos || join[ij][k] == npos || join[i][jk] == npos) continue;
        laws.expect(log_equivalent(states[join[ij][k]], states[join[i][jk]]),
                    [&] { return "associativity " + pair_text(i, j) + " " + brief(states[k]); });
      }
    }
  }

  for (const auto& s : states) {
    for (const auto& m : store.ids_by_author(author)) {
      Log next = append(store, s, m);
      auto text = [&] { return label + " append " + short_hex(m) + " to " + brief(s) + " -> " + brief(next); };
      validity.expect(check_log(store, next).valid, text);
      monotone.expect(log_leq(store, s, next, rule), text);
      if (s.shrinking()) {
        trapdoor.expect(next.shrinking(), text);
        direction.expect(store.leq_log(next.last, s.last), text);
      }
    }
  }
}

}  // namespace

OracleReport check_log_lattice(std::size_t max_msgs, LogOrderRule rule) {
  OracleReport report;
  const Keypair& keys = oracle_keys(1)[0];
  for (std::size_t n = 0; n <= std::min(max_msgs, kMaxLatticeMessages); ++n) {
    for (const auto& shape : forest_shapes(n)) {
      auto messages = build_forest(keys, shape);
      check_log_space(store_of(messages), keys.author, "forest " + shape_text(shape), rule, report);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Frontier lattice

namespace {

// Every frontier over the given per-author state lists (absent included).
std::vector<Frontier> frontier_space(const std::vector<std::vector<Log>>& per_author) {
  std::vector<Frontier> out{Frontier{}};
  for (const auto& states : per_author) {
    std::vector<Frontier> next;
    for (const auto& f : out) {
      next.push_back(f);
      for (const auto& s : states) {
        std::vector<Log> logs;
        for (const auto& [author, log] : f.logs()) logs.push_back(log);
        logs.push_back(s);
        next.push_back(*Frontier::from_logs(logs));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

OracleReport check_frontier_lattice(std::size_t max_per_author, std::size_t max_authors,
                                    std::size_t cases, LogOrderRule rule, std::uint64_t seed) {
  OracleReport report;
  auto& order = report.check("frontier.order_laws");
  auto& laws = report.check("frontier.join_laws");
  auto& lub = report.check("frontier.least_upper_bound");
  auto& monotone = report.check("frontier.monotonicity");
  auto& validity = report.check("frontier.validity");
  if (max_authors == 0) return report;

  const auto& keys = oracle_keys(max_authors);
  CounterRng rng(seed);
  std::size_t done = 0;
  while (done < cases) {
    const std::size_t k = 1 + rng.below(max_authors);
    auto messages = random_store_messages(rng, std::span(keys.data(), k), max_per_author);
    MessageStore store = store_of(messages);

    std::vector<std::vector<Log>> per_author;
    std::size_t space_size = 1;
    for (std::size_t a = 0; a < k; ++a) {
      per_author.push_back(enumerate_logs(store, keys[a].author));
      space_size *= per_author.back().size() + 1;
    }
    if (space_size > kMaxFrontierSpace) continue;
    const auto space = frontier_space(per_author);

    for (std::size_t c = 0; c < kCasesPerStore && done < cases; ++c, ++done) {
      const Frontier& f = space[rng.below(space.size())];
      const Frontier& g = space[rng.below(space.size())];
      const Frontier& h = space[rng.below(space.size())];
      auto text = [&] { return "F=" + brief(f) + " G=" + brief(g) + " H=" + brief(h); };

      const Frontier fg = frontier_join(store, f, g);
      const Frontier fgh = frontier_join(store, fg, h);

      order.expect(frontier_leq(store, f, f, rule), text);
      order.expect(!(frontier_leq(store, f, g, rule) && frontier_leq(store, g, f, rule)) ||
                       frontier_equivalent(f, g),
                   text);
      order.expect(!(frontier_leq(store, f, g, rule) && frontier_leq(store, g, h, rule)) ||
                       frontier_leq(store, f, h, rule),
                   text);
      order.expect(!(frontier_leq(store, f, fg, rule) && frontier_leq(store, fg, fgh, rule)) ||
                       frontier_leq(store, f, fgh, rule),
                   text);

      laws.expect(fg == frontier_join(store, g, f), [&] { return "commutativity " + text(); });
      laws.expect(frontier_join(store, f, f) == f, [&] { return "idempotence " + text(); });
      laws.expect(frontier_equivalent(fgh, frontier_join(store, f, frontier_join(store, g, h))),
                  [&] { return "associativity " + text(); });

      bool upper = frontier_leq(store, f, fg, rule) && frontier_leq(store, g, fg, rule);
      const Frontier* counter = nullptr;
      for (const auto& u : space) {
        if (frontier_leq(store, f, u, rule) && frontier_leq(store, g, u, rule) &&
            !frontier_leq(store, fg, u, rule)) {
          counter = &u;
          break;
        }
      }
      lub.expect(upper && counter == nullptr, [&] {
        return text() + " join " + brief(fg) + (upper ? " above " + brief(*counter) : " not an upper bound");
      });

      const auto& pool = per_author[rng.below(k)];
      const Log& log = pool[rng.below(pool.size())];
      auto updated = frontier_update(store, f, log);
      monotone.expect(upper, [&] { return "join " + text(); });
      monotone.expect(updated.accepted() && frontier_leq(store, f, updated.frontier, rule),
                      [&] { return "update " + text() + " with " + brief(log); });

      validity.expect(check_frontier(store, fg).valid && check_frontier(store, fgh).valid &&
                          check_frontier(store, updated.frontier).valid,
                      text);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Hostile states

OracleReport check_invalid_states(std::size_t max_per_author, std::size_t max_authors,
                                  std::size_t stores, std::uint64_t seed) {
  OracleReport report;
  if (max_authors == 0) return report;
  const auto& keys = oracle_keys(std::max<std::size_t>(max_authors, 1));
  const Digest unknown = sha256(Bytes{'?'});
  CounterRng rng(seed);

  for (std::size_t round = 0; round < stores; ++round) {
    auto messages = random_store_messages(rng, std::span(keys.data(), max_authors), max_per_author);
    if (max_per_author >= 2) {
      // Guarantee at least one fork per author.
      for (std::size_t a = 0; a < max_authors; ++a) {
        MsgRef base;
        for (const auto& m : messages) {
          if (m.author == keys[a].author && rng.chance(0.5)) base = msg_id(m);
        }
        messages.push_back(Message::create(keys[a], base, {}, "fork-x"));
        messages.push_back(Message::create(keys[a], base, {}, "fork-y"));
      }
    }
    MessageStore store = store_of(messages);
    Frontier start;
    for (std::size_t a = 0; a < max_authors; ++a) {
      auto states = enumerate_logs(store, keys[a].author);
      start = frontier_update(store, start, states[rng.below(states.size())]).frontier;
    }

    auto expect_label = [&](const Log& bad, LogProperty label, bool exact) {
      auto& check = report.check(std::string("invalid.") + std::string(to_string(label)));
      auto r = check_log(store, bad);
      bool reported = exact ? r.violated == std::vector<LogProperty>{label} : r.violates(label);
      auto u = frontier_update(store, start, bad);
      bool refused = !u.accepted() && u.rejected->violates(label) && u.frontier == start;
      check.expect(reported && refused, [&] { return brief(bad) + " reported " + r.describe(); });
    };

    for (std::size_t a = 0; a < max_authors; ++a) {
      const Author& author = keys[a].author;
      const auto own = store.ids_by_author(author);
      std::vector<Digest> foreign;
      for (const auto& id : store.ids()) {
        if (store.get(id).author != author) foreign.push_back(id);
      }
      std::vector<Log> shrinking;
      for (const auto& s : enumerate_logs(store, author)) {
        if (s.shrinking()) shrinking.push_back(s);
      }

      // CL1 and FL1 hinge on whether forks is empty, which is also what
      // selects the checked family, so neither can be violated alone.
      expect_label(Log{author, unknown, {}}, LogProperty::kCL2, true);
      if (!foreign.empty()) {
        expect_label(Log{author, foreign[rng.below(foreign.size())], {}}, LogProperty::kCL3, true);
      }
      if (shrinking.empty()) continue;
      const Log& s = shrinking[rng.below(shrinking.size())];
      expect_label(Log{author, unknown, s.forks}, LogProperty::kFL2, false);
      if (!foreign.empty()) {
        const Digest& other = foreign[rng.below(foreign.size())];
        Log with_foreign = s;
        with_foreign.forks.insert(other);
        expect_label(with_foreign, LogProperty::kFL5, false);
        expect_label(Log{author, other, s.forks}, LogProperty::kFL3, false);
      }
      Log with_unknown = s;
      with_unknown.forks.insert(unknown);
      expect_label(with_unknown, LogProperty::kFL4, true);
      expect_label(Log{author, s.last, {*s.forks.begin()}}, LogProperty::kFL6, true);
      for (const auto& id : own) {
        if (store.get(id).prev != s.last) {
          Log misplaced = s;
          misplaced.forks.insert(id);
          expect_label(misplaced, LogProperty::kFL7, false);
          break;
        }
      }
    }
  }
  return report;
}

OracleReport run_oracle(const OracleOptions& options) {
  OracleReport report = check_graph(options.max_msgs, options.max_authors, options.seed);
  report.merge(check_log_lattice(options.max_msgs, options.rule));
  const std::size_t per_author = std::min<std::size_t>(options.max_msgs, 5);
  report.merge(check_frontier_lattice(per_author, options.max_authors, options.frontier_cases,
                                      options.rule, options.seed));
  report.merge(check_invalid_states(per_author, options.max_authors, 200, options.seed));
  return report;
}

}  // namespace bftlog
