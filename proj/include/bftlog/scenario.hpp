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


#ifndef BFTLOG_SCENARIO_HPP_
#define BFTLOG_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bftlog/counter_rng.hpp"

namespace bftlog {

/// Invalid or unparsable scenario.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReplicaBehavior { kCorrect, kOmit, kPartial };
enum class AuthorBehavior { kCorrect, kForking };

std::string_view to_string(ReplicaBehavior b);
std::string_view to_string(AuthorBehavior b);

struct ReplicaSpec {
  int id = 0;
  ReplicaBehavior behavior = ReplicaBehavior::kCorrect;
  /// Chance that a partial replica forwards any single item it offers.
  double forward_probability = 1.0;
};

/// Once the primary chain holds `index` messages and the round is at least
/// `not_before_round`, the message at `index` (bottom for 0) gets
/// `branches` children in total.
struct ForkStep {
  std::size_t index = 0;
  std::size_t branches = 2;
  std::size_t not_before_round = 0;
};

/// Publishes in rounds start, start + every, ... (count of them).
struct PublishPlan {
  std::size_t start = 0;
  std::size_t every = 1;
  std::size_t count = 0;

  bool at(std::size_t round) const {
    return round >= start && (round - start) % every == 0 && (round - start) / every < count;
  }
};

struct AuthorSpec {
  std::string name;
  AuthorBehavior behavior = AuthorBehavior::kCorrect;
  std::vector<int> home;
  std::vector<ForkStep> fork_plan;
  PublishPlan publish;
};

using Edge = std::pair<int, int>;

struct Scenario {
  std::string name;
  std::uint64_t seed = 1;
  std::size_t rounds = 0;
  std::size_t syncs_per_round = 0;
  bool strict_m7 = false;
  std::vector<ReplicaSpec> replicas;
  /// Explicit edges, or a random connected graph when set.
  std::vector<Edge> edges;
  std::optional<double> extra_edge_probability;
  std::vector<AuthorSpec> authors;

  const ReplicaSpec* replica(int id) const;
  std::vector<int> correct_ids() const;
};

/// Parses and validates. Unknown keys are errors.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Throws ConfigError on: fewer than two correct replicas, duplicate ids
/// or names, edges to unknown replicas, a disconnected correct subgraph,
/// homes that are unknown or Byzantine, and fork plans that need more
/// branches than the author has homes.
void validate(const Scenario& scenario);

/// Sorted edge list with a < b. Random graphs join the correct replicas
/// with a random spanning tree, attach each Byzantine replica to one
/// correct replica, then add every other pair with extra_edge_probability.
std::vector<Edge> build_sync_graph(const Scenario& scenario, CounterRng& rng);

/// Longest shortest path between correct replicas over correct-only edges.
std::size_t correct_diameter(const Scenario& scenario, const std::vector<Edge>& edges);

}  // namespace bftlog

#endif  // BFTLOG_SCENARIO_HPP_
