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


#ifndef BFTLOG_SIMULATION_HPP_
#define BFTLOG_SIMULATION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bftlog/replica.hpp"
#include "bftlog/scenario.hpp"

namespace bftlog {

/// One line of an author's message tree and the homes it is delivered to.
struct Branch {
  MsgRef tip;
  std::vector<int> homes;
};

/// Signs and publishes an author's messages. Correct actors keep a single
/// chain and list the lasts of other authors' growing logs, as seen by
/// their first home, as deps. Forking actors follow their fork plan and
/// give every branch its own share of the homes.
class AuthorActor {
 public:
  struct Delivery {
    Message message;
    std::vector<int> homes;
  };

  AuthorActor(AuthorSpec spec, Keypair keys);

  /// Messages to deliver this round; empty when the plan does not publish.
  std::vector<Delivery> step(std::size_t round, const Replica& first_home);

  /// Not-yet-stored ancestors of m for the given store, topological order.
  std::vector<Message> history_for(const Message& m, const MessageStore& target) const;

  const AuthorSpec& spec() const { return spec_; }
  const Author& author() const { return keys_.author; }
  const std::vector<Message>& published() const { return published_; }
  /// Branch 0 from the first message on.
  const std::vector<Digest>& primary_chain() const { return primary_; }
  const std::vector<Branch>& branches() const { return branches_; }

 private:
  void fire(const ForkStep& step);

  AuthorSpec spec_;
  Keypair keys_;
  MessageStore known_;
  std::vector<Message> published_;
  std::vector<Digest> primary_;
  std::vector<Branch> branches_;
  std::vector<bool> fired_;
};

/// Final state every correct replica must reach for one author, derived
/// from the author's published tree alone. A chain gives a growing log at
/// its head. Otherwise the log shrinks to the first branching message from
/// the root (bottom when there are several roots), and its forks must be
/// children of that message.
struct ExpectedLog {
  bool forked = false;
  MsgRef last;
  DigestSet children;
};

ExpectedLog expected_log(std::span<const Message> published);

struct Detection {
  std::string author;
  int replica = 0;
  std::size_t round = 0;
  /// "fork" on growing to shrinking, "deeper" when a shrinking last moves.
  std::string kind;
  MsgRef last;
  DigestSet proof;
};

struct WindowStats {
  std::string author;
  std::optional<std::size_t> first_detection_round;
  /// First round ending with every correct replica shrinking.
  std::optional<std::size_t> full_propagation_round;
  /// Rounds from first detection on in which some correct replica's log
  /// for the author still grew.
  std::size_t window_rounds = 0;
  /// Moves of last away from the root after full propagation.
  std::size_t post_propagation_advances = 0;
  /// Deliveries of the author's messages after full propagation.
  std::size_t post_propagation_deliveries = 0;
};

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AuthorOutcome {
  std::string name;
  Author author;
  AuthorBehavior behavior = AuthorBehavior::kCorrect;
  std::size_t published = 0;
  ExpectedLog expected;
  /// As held by the lowest-id correct replica.
  std::optional<Log> final_log;
};

struct SimReport {
  std::string scenario;
  std::uint64_t seed = 0;
  bool converged = false;
  /// Rounds until snapshots stayed identical; quiescence sweeps count as
  /// rounds after the scheduled ones.
  std::optional<std::size_t> rounds_to_convergence;
  std::size_t rounds = 0;
  std::size_t quiescence_sweeps = 0;
  std::size_t diameter = 0;
  std::vector<Edge> edges;
  std::vector<AuthorOutcome> authors;
  std::vector<Detection> detections;
  std::vector<WindowStats> windows;
  std::map<int, std::size_t> misbehavior_records;
  std::map<int, ReplicaCounters> counters;
  std::string snapshot;
  std::vector<Assertion> assertions;

  bool passed() const;
  const Assertion* assertion(const std::string& name) const;
  /// Pretty JSON, sorted keys, trailing newline.
  std::string to_json() const;
};

class Simulation {
 public:
  Simulation(const Scenario& scenario, std::uint64_t seed);

  /// Scheduled rounds, then quiescence, then assertions.
  SimReport run();

  const std::vector<Replica>& replicas() const { return replicas_; }
  const std::vector<AuthorActor>& authors() const { return authors_; }

 private:
  Replica& replica(int id);
  void publish(std::size_t round);
  void sync_pair(Replica& receiver, const Replica& sender);
  void observe();
  void end_round();
  void finish(SimReport& report);

  Scenario scenario_;
  std::uint64_t seed_;
  CounterRng rng_;
  std::vector<Edge> edges_;
  std::size_t diameter_ = 0;
  std::vector<Replica> replicas_;
  std::vector<AuthorActor> authors_;

  std::size_t round_ = 0;
  std::map<std::pair<int, Author>, Log> seen_;
  std::map<Author, WindowStats> windows_;
  std::map<Author, std::set<std::size_t>> growth_rounds_;
  std::vector<Detection> detections_;
  std::optional<std::size_t> last_divergent_round_;
  bool ever_diverged_ = false;
  std::size_t non_monotone_syncs_ = 0;
};

SimReport run(const Scenario& scenario, std::uint64_t seed);

struct WindowProbe {
  std::vector<WindowStats> windows;
  /// Every forked author was detected and fully propagated, with no log
  /// advance after propagation.
  bool passed = false;
};

WindowProbe window_of_opportunity_probe(const Scenario& scenario, std::uint64_t seed);

}  // namespace bftlog

#endif  // BFTLOG_SIMULATION_HPP_
