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


#include "bftlog/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bftlog {

using nlohmann::json;

std::string_view to_string(ReplicaBehavior b) {
  switch (b) {
    case ReplicaBehavior::kCorrect: return "correct";
    case ReplicaBehavior::kOmit: return "omit";
    case ReplicaBehavior::kPartial: return "partial";
  }
  return "?";
}

std::string_view to_string(AuthorBehavior b) {
  return b == AuthorBehavior::kCorrect ? "correct" : "forking";
}

const ReplicaSpec* Scenario::replica(int id) const {
  for (const auto& r : replicas) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::vector<int> Scenario::correct_ids() const {
  std::vector<int> out;
  for (const auto& r : replicas) {
    if (r.behavior == ReplicaBehavior::kCorrect) out.push_back(r.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void only_keys(const json& object, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  if (!object.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
  }
}

template <typename T>
T get_or(const json& object, const char* key, T fallback) {
  auto it = object.find(key);
  return it == object.end() ? fallback : it->get<T>();
}

template <typename T>
T get_required(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) throw ConfigError(where + ": missing \"" + key + "\"");
  return it->get<T>();
}

ReplicaBehavior replica_behavior(const std::string& text, const std::string& where) {
  if (text == "correct") return ReplicaBehavior::kCorrect;
  if (text == "omit") return ReplicaBehavior::kOmit;
  if (text == "partial") return ReplicaBehavior::kPartial;
  throw ConfigError(where + ": unknown replica behavior \"" + text + "\"");
}

AuthorBehavior author_behavior(const std::string& text, const std::string& where) {
  if (text == "correct") return AuthorBehavior::kCorrect;
  if (text == "forking") return AuthorBehavior::kForking;
  throw ConfigError(where + ": unknown author behavior \"" + text + "\"");
}

Scenario from_json(const json& doc) {
  only_keys(doc,
            {"name", "seed", "rounds", "syncs_per_round", "strict_m7", "replicas", "sync_graph",
             "random_graph", "authors"},
            "scenario");
  Scenario s;
  s.name = get_required<std::string>(doc, "name", "scenario");
  s.seed = get_or<std::uint64_t>(doc, "seed", 1);
  s.rounds = get_required<std::size_t>(doc, "rounds", "scenario");
  s.syncs_per_round = get_required<std::size_t>(doc, "syncs_per_round", "scenario");
  s.strict_m7 = get_or<bool>(doc, "strict_m7", false);

  for (const auto& r : get_required<json>(doc, "replicas", "scenario")) {
    only_keys(r, {"id", "behavior", "forward_probability"}, "replica");
    ReplicaSpec spec;
    spec.id = get_required<int>(r, "id", "replica");
    const std::string where = "replica " + std::to_string(spec.id);
    spec.behavior = replica_behavior(get_or<std::string>(r, "behavior", "correct"), where);
    spec.forward_probability = get_or<double>(r, "forward_probability", 1.0);
    s.replicas.push_back(spec);
  }

  const bool explicit_graph = doc.contains("sync_graph");
  if (explicit_graph == doc.contains("random_graph")) {
    throw ConfigError("scenario: give exactly one of \"sync_graph\" and \"random_graph\"");
  }
  if (explicit_graph) {
    for (const auto& e : doc.at("sync_graph")) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("sync_graph: edges are [a, b] pairs");
      s.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  } else {
    const json& g = doc.at("random_graph");
    only_keys(g, {"extra_edge_probability"}, "random_graph");
    s.extra_edge_probability = get_or<double>(g, "extra_edge_probability", 0.0);
  }

  for (const auto& a : get_required<json>(doc, "authors", "scenario")) {
    only_keys(a, {"name", "behavior", "home", "fork_plan", "publish"}, "author");
    AuthorSpec spec;
    spec.name = get_required<std::string>(a, "name", "author");
    const std::string where = "author " + spec.name;
    spec.behavior = author_behavior(get_or<std::string>(a, "behavior", "correct"), where);
    spec.home = get_required<std::vector<int>>(a, "home", where);
    for (const auto& step : get_or<json>(a, "fork_plan", json::array())) {
      only_keys(step, {"index", "branches", "not_before_round"}, where + " fork_plan");
      ForkStep f;
      f.index = get_required<std::size_t>(step, "index", where + " fork_plan");
      f.branches = get_or<std::size_t>(step, "branches", 2);
      f.not_before_round = get_or<std::size_t>(step, "not_before_round", 0);
      spec.fork_plan.push_back(f);
    }
    const json& p = get_required<json>(a, "publish", where);
    only_keys(p, {"start", "every", "count"}, where + " publish");
    spec.publish.start = get_or<std::size_t>(p, "start", 0);
    spec.publish.every = get_or<std::size_t>(p, "every", 1);
    spec.publish.count = get_required<std::size_t>(p, "count", where + " publish");
    s.authors.push_back(std::move(spec));
  }
  return s;
}

bool connected(const std::vector<int>& nodes, const std::vector<Edge>& edges) {
  if (nodes.empty()) return true;
  std::map<int, std::vector<int>> adj;
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::set<int> allowed(nodes.begin(), nodes.end());
  std::set<int> seen{nodes.front()};
  std::vector<int> stack{nodes.front()};
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    for (int m : adj[n]) {
      if (allowed.contains(m) && seen.insert(m).second) stack.push_back(m);
    }
  }
  return seen.size() == allowed.size();
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  Scenario s;
  try {
    s = from_json(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

void validate(const Scenario& s) {
  std::set<int> ids;
  for (const auto& r : s.replicas) {
    if (!ids.insert(r.id).second) throw ConfigError("duplicate replica id " + std::to_string(r.id));
    if (r.forward_probability < 0.0 || r.forward_probability > 1.0) {
      throw ConfigError("replica " + std::to_string(r.id) + ": forward_probability outside [0, 1]");
    }
  }
  const auto correct = s.correct_ids();
  if (correct.size() < 2) {
    throw ConfigError("at least two correct replicas are required, found " +
                      std::to_string(correct.size()));
  }
  if (s.extra_edge_probability &&
      (*s.extra_edge_probability < 0.0 || *s.extra_edge_probability > 1.0)) {
    throw ConfigError("random_graph: extra_edge_probability outside [0, 1]");
  }
  for (const auto& [a, b] : s.edges) {
    if (!ids.contains(a) || !ids.contains(b)) throw ConfigError("sync_graph: edge to unknown replica");
    if (a == b) throw ConfigError("sync_graph: self loop on " + std::to_string(a));
  }
  if (!s.extra_edge_probability && !connected(correct, s.edges)) {
    throw ConfigError("sync_graph: correct replicas are not connected through correct replicas");
  }

  std::set<std::string> names;
  for (const auto& a : s.authors) {
    if (!names.insert(a.name).second) throw ConfigError("duplicate author name " + a.name);
    if (a.home.empty()) throw ConfigError("author " + a.name + ": no home replicas");
    std::set<int> homes;
    for (int h : a.home) {
      const ReplicaSpec* r = s.replica(h);
      if (r == nullptr) throw ConfigError("author " + a.name + ": unknown home " + std::to_string(h));
      if (r->behavior != ReplicaBehavior::kCorrect) {
        throw ConfigError("author " + a.name + ": home " + std::to_string(h) + " is not correct");
      }
      if (!homes.insert(h).second) throw ConfigError("author " + a.name + ": duplicate home");
    }
    if (a.publish.every == 0) throw ConfigError("author " + a.name + ": publish.every must be positive");
    if (a.behavior == AuthorBehavior::kCorrect && !a.fork_plan.empty()) {
      throw ConfigError("author " + a.name + ": correct authors have no fork plan");
    }
    std::size_t branches = 1;
    for (const auto& f : a.fork_plan) {
      if (f.branches < 2) throw ConfigError("author " + a.name + ": a fork needs at least 2 branches");
      branches += f.branches - 1;
    }
    if (branches > a.home.size()) {
      throw ConfigError("author " + a.name + ": " + std::to_string(branches) +
                        " branches need as many homes, found " + std::to_string(a.home.size()));
    }
  }
}

std::vector<Edge> build_sync_graph(const Scenario& s, CounterRng& rng) {
  std::set<Edge> edges;
  auto add = [&edges](int a, int b) { edges.emplace(std::min(a, b), std::max(a, b)); };
  if (!s.extra_edge_probability) {
    for (const auto& [a, b] : s.edges) add(a, b);
    return {edges.begin(), edges.end()};
  }

  auto correct = s.correct_ids();
  // Random attachment order gives a random spanning tree.
  for (std::size_t i = correct.size(); i > 1; --i) std::swap(correct[i - 1], correct[rng.below(i)]);
  for (std::size_t i = 1; i < correct.size(); ++i) add(correct[i], correct[rng.below(i)]);
  for (const auto& r : s.replicas) {
    if (r.behavior != ReplicaBehavior::kCorrect) add(r.id, correct[rng.below(correct.size())]);
  }
  for (std::size_t i = 0; i < s.replicas.size(); ++i) {
    for (std::size_t j = i + 1; j < s.replicas.size(); ++j) {
      if (rng.chance(*s.extra_edge_probability)) add(s.replicas[i].id, s.replicas[j].id);
    }
  }
  return {edges.begin(), edges.end()};
}

std::size_t correct_diameter(const Scenario& s, const std::vector<Edge>& edges) {
  const auto correct = s.correct_ids();
  std::set<int> allowed(correct.begin(), correct.end());
  std::map<int, std::vector<int>> adj;
  for (const auto& [a, b] : edges) {
    if (allowed.contains(a) && allowed.contains(b)) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  std::size_t diameter = 0;
  for (int start : correct) {
    std::map<int, std::size_t> dist{{start, 0}};
    std::queue<int> queue;
    queue.push(start);
    while (!queue.empty()) {
      int n = queue.front();
      queue.pop();
      for (int m : adj[n]) {
        if (dist.emplace(m, dist[n] + 1).second) {
          diameter = std::max(diameter, dist[m]);
          queue.push(m);
        }
      }
    }
  }
  return diameter;
}

}  // namespace bftlog
