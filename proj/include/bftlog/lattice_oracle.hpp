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


#ifndef BFTLOG_LATTICE_ORACLE_HPP_
#define BFTLOG_LATTICE_ORACLE_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bftlog/counter_rng.hpp"
#include "bftlog/frontier_crdt.hpp"

namespace bftlog {

/// Brute-force reference for graph queries: plain DFS over raw messages,
/// no memoization and no MessageStore.
class GraphOracle {
 public:
  explicit GraphOracle(std::span<const Message> messages);

  bool leq_m(const MsgRef& x, const MsgRef& y) const;
  bool leq_log(const MsgRef& x, const MsgRef& y) const;
  DigestSet history(const MsgRef& x) const;
  DigestSet log_history(const MsgRef& x) const;
  /// ]from, to] as a set difference of prev-chains.
  DigestSet log_range(const MsgRef& from, const MsgRef& to) const;
  /// The <=_log-maximum of log_history(x) n log_history(y); bottom if empty.
  MsgRef log_prefix(const MsgRef& x, const MsgRef& y) const;
  DigestSet fork_proof(const MsgRef& x, const MsgRef& y) const;

 private:
  std::map<Digest, Message> messages_;
};

/// Every unlabeled forest on n nodes as a parent array in preorder
/// (parent index < child index, -1 for roots). Generated from the level
/// sequences of rooted trees on n + 1 nodes, dropping the virtual root.
std::vector<std::vector<int>> forest_shapes(std::size_t n);

/// Signs one message per node of the shape; prev follows the parent array.
std::vector<Message> build_forest(const Keypair& keys, std::span<const int> parents);

/// Every valid log state of one author over the store: growing at bottom
/// or any message, and shrinking at bottom or any message with every fork
/// set of two or more of its children.
std::vector<Log> enumerate_logs(const MessageStore& store, const Author& author);

struct OracleCheck {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  template <typename Describe>
  void expect(bool ok, Describe&& describe) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = describe();
  }
  bool passed() const { return failures == 0; }
};

struct OracleReport {
  // Deque so references returned by check() stay valid.
  std::deque<OracleCheck> checks;

  OracleCheck& check(const std::string& name);
  void merge(const OracleReport& other);
  bool passed() const;
  std::uint64_t cases() const;
  std::string summary() const;
};

/// Graph queries of MessageStore against GraphOracle on all pairs of every
/// single-author forest up to max_msgs, plus random multi-author stores.
OracleReport check_graph(std::size_t max_msgs, std::size_t max_authors, std::uint64_t seed);

/// Exhaustive log lattice over every single-author forest with up to
/// max_msgs messages: order laws, join laws, brute-force least upper bound,
/// append monotonicity, phase trapdoor and validity preservation.
OracleReport check_log_lattice(std::size_t max_msgs, LogOrderRule rule);

/// Random frontier cases over stores of up to max_authors authors with up
/// to max_per_author messages each. Upper bounds are searched over every
/// frontier buildable on the case's store.
OracleReport check_frontier_lattice(std::size_t max_per_author, std::size_t max_authors,
                                    std::size_t cases, LogOrderRule rule, std::uint64_t seed);

/// Hostile states, one per label, must be reported with that label and
/// refused by frontier_update.
OracleReport check_invalid_states(std::size_t max_per_author, std::size_t max_authors,
                                  std::size_t stores, std::uint64_t seed);

/// Signed, valid messages for the given authors in a random interleaving:
/// up to max_per_author each, forks and extra roots included, at most one
/// dep per other author.
std::vector<Message> random_store_messages(CounterRng& rng, std::span<const Keypair> authors,
                                           std::size_t max_per_author);

inline constexpr std::size_t kMaxOracleAuthors = 8;

/// Deterministic keys "oracle/author-<i>"; count is at most kMaxOracleAuthors.
const std::vector<Keypair>& oracle_keys(std::size_t count);

struct OracleOptions {
  std::size_t max_msgs = 6;
  std::size_t max_authors = 1;
  std::size_t frontier_cases = 10000;
  LogOrderRule rule = LogOrderRule::kStandard;
  std::uint64_t seed = 1;
};

/// Log lattice enumeration is clamped at kMaxLatticeMessages; graph
/// queries run up to max_msgs and frontiers use min(max_msgs, 5) messages
/// per author.
OracleReport run_oracle(const OracleOptions& options);

inline constexpr std::size_t kMaxLatticeMessages = 7;

}  // namespace bftlog

#endif  // BFTLOG_LATTICE_ORACLE_HPP_
