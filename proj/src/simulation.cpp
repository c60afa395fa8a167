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


#include "bftlog/simulation.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace bftlog {

// ---------------------------------------------------------------------------
// AuthorActor

AuthorActor::AuthorActor(AuthorSpec spec, Keypair keys)
    : spec_(std::move(spec)), keys_(std::move(keys)), fired_(spec_.fork_plan.size(), false) {
  branches_.push_back(Branch{std::nullopt, spec_.home});
}

std::vector<AuthorActor::Delivery> AuthorActor::step(std::size_t round, const Replica& first_home) {
  if (!spec_.publish.at(round)) return {};
  for (std::size_t i = 0; i < spec_.fork_plan.size(); ++i) {
    const ForkStep& f = spec_.fork_plan[i];
    if (!fired_[i] && primary_.size() >= f.index && round >= f.not_before_round) {
      fire(f);
      fired_[i] = true;
    }
  }

  DigestSet deps;
  if (spec_.behavior == AuthorBehavior::kCorrect) {
    const MessageStore& home = first_home.store;
    for (const auto& [author, log] : first_home.frontier.logs()) {
      if (author == keys_.author || log.shrinking() || !log.last) continue;
      deps.insert(*log.last);
      for (const auto& id : home.ids()) {
        if (!known_.contains(id) && home.leq_m(id, log.last)) known_.insert(home.get(id));
      }
    }
  }

  std::vector<Delivery> out;
  for (std::size_t j = 0; j < branches_.size(); ++j) {
    Branch& branch = branches_[j];
    const std::size_t depth = branch.tip ? known_.depth(*branch.tip) + 1 : 1;
    Message m = Message::create(keys_, branch.tip, deps,
                                spec_.name + ":" + std::to_string(j) + ":" + std::to_string(depth));
    const Digest id = known_.insert(m).id;
    published_.push_back(m);
    if (j == 0) primary_.push_back(id);
    branch.tip = id;
    out.push_back(Delivery{std::move(m), branch.homes});
  }
  return out;
}

void AuthorActor::fire(const ForkStep& step) {
  const MsgRef point = step.index == 0 ? MsgRef{} : MsgRef{primary_[step.index - 1]};
  // Distinct ways the existing branches leave the branch point: through one
  // of its children, or by still sitting on it.
  std::set<MsgRef> through;
  for (const auto& b : branches_) {
    if (b.tip == point) {
      through.insert(point);
      continue;
    }
    for (MsgRef cur = b.tip; cur; cur = known_.get(*cur).prev) {
      if (known_.get(*cur).prev == point) {
        through.insert(cur);
        break;
      }
    }
  }
  for (std::size_t k = through.size(); k < step.branches; ++k) branches_.push_back(Branch{point, {}});

  const std::size_t count = branches_.size();
  for (std::size_t j = 0; j < count; ++j) {
    branches_[j].homes.clear();
    for (std::size_t i = j; i < spec_.home.size(); i += count) branches_[j].homes.push_back(spec_.home[i]);
  }
}

std::vector<Message> AuthorActor::history_for(const Message& m, const MessageStore& target) const {
  const Digest id = msg_id(m);
  std::vector<Message> out;
  for (const auto& d : known_.ids()) {
    if (d != id && !target.contains(d) && known_.leq_m(d, id)) out.push_back(known_.get(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Expected final state

ExpectedLog expected_log(std::span<const Message> published) {
  std::map<MsgRef, DigestSet> children;
  for (const auto& m : published) children[m.prev].insert(msg_id(m));

  ExpectedLog out;
  MsgRef cur;
  while (true) {
    auto it = children.find(cur);
    if (it == children.end()) break;
    if (it->second.size() >= 2) {
      out.forked = true;
      out.children = it->second;
      break;
    }
    cur = *it->second.begin();
  }
  out.last = cur;
  return out;
}

// ---------------------------------------------------------------------------
// Simulation

Simulation::Simulation(const Scenario& scenario, std::uint64_t seed)
    : scenario_(scenario), seed_(seed), rng_(seed) {
  validate(scenario_);
  edges_ = build_sync_graph(scenario_, rng_);
  diameter_ = correct_diameter(scenario_, edges_);
  for (const auto& r : scenario_.replicas) {
    replicas_.emplace_back(r.id, r.behavior, r.forward_probability, scenario_.strict_m7);
  }
  std::sort(replicas_.begin(), replicas_.end(),
            [](const Replica& a, const Replica& b) { return a.id < b.id; });
  for (const auto& a : scenario_.authors) {
    authors_.emplace_back(a, Keypair::from_label("scenario-author/" + a.name));
    if (a.behavior == AuthorBehavior::kForking) {
      windows_[authors_.back().author()].author = a.name;
    }
  }
}

Replica& Simulation::replica(int id) {
  for (auto& r : replicas_) {
    if (r.id == id) return r;
  }
  throw ConfigError("unknown replica " + std::to_string(id));
}

void Simulation::publish(std::size_t round) {
  for (auto& actor : authors_) {
    for (const auto& delivery : actor.step(round, replica(actor.spec().home.front()))) {
      for (int h : delivery.homes) {
        Replica& target = replica(h);
        deliver(target, actor.history_for(delivery.message, target.store), delivery.message);
        auto w = windows_.find(actor.author());
        if (w != windows_.end() && w->second.full_propagation_round && target.correct()) {
          ++w->second.post_propagation_deliveries;
        }
        observe();
      }
    }
  }
}

void Simulation::sync_pair(Replica& receiver, const Replica& sender) {
  if (!receiver.correct()) {
    sync(receiver, sender, rng_);
    return;
  }
  Frontier before = receiver.frontier;
  sync(receiver, sender, rng_);
  if (!frontier_leq(receiver.store, before, receiver.frontier)) ++non_monotone_syncs_;
  observe();
}

void Simulation::observe() {
  for (const auto& r : replicas_) {
    if (!r.correct()) continue;
    for (const auto& [author, log] : r.frontier.logs()) {
      auto [it, fresh] = seen_.try_emplace({r.id, author}, initialize_log(author));
      const Log prev = it->second;
      if (log == prev) continue;
      it->second = log;

      auto w = windows_.find(author);
      if (w == windows_.end()) continue;
      WindowStats& stats = w->second;
      if (log.shrinking() && (prev.growing() || prev.last != log.last)) {
        detections_.push_back(
            Detection{stats.author, r.id, round_, prev.growing() ? "fork" : "deeper", log.last, log.forks});
        if (!stats.first_detection_round) stats.first_detection_round = round_;
      }
      if (log.growing() && prev.last != log.last && stats.first_detection_round) {
        growth_rounds_[author].insert(round_);
      }
      if (stats.full_propagation_round && prev.last != log.last &&
          !r.store.leq_log(log.last, prev.last)) {
        ++stats.post_propagation_advances;
      }
    }
  }

  for (auto& [author, stats] : windows_) {
    if (stats.full_propagation_round || !stats.first_detection_round) continue;
    bool all = std::all_of(replicas_.begin(), replicas_.end(), [&](const Replica& r) {
      if (!r.correct()) return true;
      const Log* log = r.frontier.find(author);
      return log != nullptr && log->shrinking();
    });
    if (all) stats.full_propagation_round = round_;
  }

  std::optional<std::string> first;
  for (const auto& r : replicas_) {
    if (!r.correct()) continue;
    std::string s = snapshot(r.frontier);
    if (!first) {
      first = std::move(s);
    } else if (s != *first) {
      last_divergent_round_ = round_;
      ever_diverged_ = true;
      break;
    }
  }
}

SimReport Simulation::run() {
  for (round_ = 0; round_ < scenario_.rounds; ++round_) {
    publish(round_);
    for (std::size_t s = 0; s < scenario_.syncs_per_round && !edges_.empty(); ++s) {
      auto [a, b] = edges_[rng_.below(edges_.size())];
      if (rng_.below(2) == 1) std::swap(a, b);
      sync_pair(replica(a), replica(b));
    }
  }

  const std::size_t sweeps = std::max<std::size_t>(1, 2 * diameter_);
  for (std::size_t sweep = 0; sweep < sweeps; ++sweep, ++round_) {
    for (const auto& [a, b] : edges_) {
      Replica& ra = replica(a);
      Replica& rb = replica(b);
      if (!ra.correct() || !rb.correct()) continue;
      sync_pair(ra, rb);
      sync_pair(rb, ra);
    }
  }

  SimReport report;
  report.scenario = scenario_.name;
  report.seed = seed_;
  report.rounds = scenario_.rounds;
  report.quiescence_sweeps = sweeps;
  report.diameter = diameter_;
  report.edges = edges_;
  finish(report);
  return report;
}

void Simulation::finish(SimReport& report) {
  std::vector<const Replica*> correct;
  for (const auto& r : replicas_) {
    if (r.correct()) correct.push_back(&r);
    report.misbehavior_records[r.id] = r.misbehavior.size();
    report.counters[r.id] = r.counters;
  }

  std::set<std::string> snapshots;
  bool valid = true;
  for (const Replica* r : correct) {
    snapshots.insert(snapshot(r->frontier));
    valid &= check_frontier(r->store, r->frontier).valid;
  }
  report.converged = snapshots.size() == 1;
  report.snapshot = snapshot(correct.front()->frontier);
  if (report.converged) {
    report.rounds_to_convergence = ever_diverged_ ? *last_divergent_round_ + 1 : 0;
  }
  report.assertions.push_back({"convergence", report.converged,
                               std::to_string(snapshots.size()) + " distinct correct snapshots"});
  report.assertions.push_back({"frontier_validity", valid, "F1-F2 on every correct replica"});
  report.assertions.push_back({"monotonic_sync", non_monotone_syncs_ == 0,
                               std::to_string(non_monotone_syncs_) + " syncs shrank a correct frontier"});

  bool bounded = true;
  for (const auto& r : replicas_) {
    std::set<Author> seen;
    for (const auto& [author, m] : r.misbehavior) bounded &= m.author == author && seen.insert(author).second;
  }
  report.assertions.push_back({"misbehavior_bound", bounded, "at most one record per author per replica"});

  for (const auto& actor : authors_) {
    AuthorOutcome outcome;
    outcome.name = actor.spec().name;
    outcome.author = actor.author();
    outcome.behavior = actor.spec().behavior;
    outcome.published = actor.published().size();
    outcome.expected = expected_log(actor.published());
    if (const Log* log = correct.front()->frontier.find(actor.author())) outcome.final_log = *log;

    const ExpectedLog& want = outcome.expected;
    std::string mismatch;
    for (const Replica* r : correct) {
      const Log* log = r->frontier.find(actor.author());
      Log have = log ? *log : initialize_log(actor.author());
      bool ok = have.last == want.last && have.shrinking() == want.forked;
      if (ok && want.forked) {
        ok = check_log(r->store, have).valid &&
             std::includes(want.children.begin(), want.children.end(), have.forks.begin(), have.forks.end());
      }
      if (!ok && mismatch.empty()) {
        mismatch = "replica " + std::to_string(r->id) + " holds " + render(have);
      }
    }
    std::string expected_text = (want.forked ? "shrinking at " : "growing at ") + ref_hex(want.last);
    report.assertions.push_back({"expected_state/" + outcome.name, mismatch.empty(),
                                 mismatch.empty() ? expected_text : expected_text + "; " + mismatch});

    if (want.forked) {
      bool live = std::all_of(correct.begin(), correct.end(), [&](const Replica* r) {
        const Log* log = r->frontier.find(actor.author());
        return log != nullptr && log->shrinking();
      });
      report.assertions.push_back({"liveness/" + outcome.name, live, "every correct replica holds a fork proof"});
    }
    report.authors.push_back(std::move(outcome));
  }

  for (auto& [author, stats] : windows_) {
    stats.window_rounds = growth_rounds_[author].size();
    const bool forked = stats.first_detection_round.has_value();
    if (forked) {
      bool dead = stats.full_propagation_round && stats.post_propagation_advances == 0;
      report.assertions.push_back(
          {"fork_death/" + stats.author, dead,
           std::to_string(stats.post_propagation_advances) + " advances after full propagation"});
    }
    report.windows.push_back(stats);
  }
  std::sort(report.windows.begin(), report.windows.end(),
            [](const WindowStats& a, const WindowStats& b) { return a.author < b.author; });
  report.detections = detections_;
}

// ---------------------------------------------------------------------------
// Report

bool SimReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

const Assertion* SimReport::assertion(const std::string& name) const {
  for (const auto& a : assertions) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

namespace {

nlohmann::json ids_json(const DigestSet& ids) {
  auto out = nlohmann::json::array();
  for (const auto& d : ids) out.push_back(d.hex());
  return out;
}

nlohmann::json optional_json(const std::optional<std::size_t>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string SimReport::to_json() const {
  using nlohmann::json;
  json j;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["converged"] = converged;
  j["passed"] = passed();
  j["rounds"] = rounds;
  j["rounds_to_convergence"] = optional_json(rounds_to_convergence);
  j["quiescence_sweeps"] = quiescence_sweeps;
  j["diameter"] = diameter;

  j["sync_graph"] = json::array();
  for (const auto& [a, b] : edges) j["sync_graph"].push_back({a, b});

  j["authors"] = json::array();
  for (const auto& a : authors) {
    json entry;
    entry["name"] = a.name;
    entry["author"] = a.author.hex();
    entry["behavior"] = std::string(to_string(a.behavior));
    entry["published"] = a.published;
    entry["expected"] = {{"phase", a.expected.forked ? "shrinking" : "growing"},
                         {"last", ref_hex(a.expected.last)}};
    if (a.final_log) {
      entry["final"] = {{"phase", a.final_log->growing() ? "growing" : "shrinking"},
                        {"last", ref_hex(a.final_log->last)},
                        {"forks", ids_json(a.final_log->forks)}};
    } else {
      entry["final"] = nullptr;
    }
    j["authors"].push_back(std::move(entry));
  }

  j["fork_detections"] = json::array();
  for (const auto& d : detections) {
    j["fork_detections"].push_back({{"author", d.author},
                                    {"replica", d.replica},
                                    {"round", d.round},
                                    {"kind", d.kind},
                                    {"last", ref_hex(d.last)},
                                    {"proof", ids_json(d.proof)}});
  }

  j["window_of_opportunity"] = json::array();
  for (const auto& w : windows) {
    j["window_of_opportunity"].push_back({{"author", w.author},
                                          {"first_detection_round", optional_json(w.first_detection_round)},
                                          {"full_propagation_round", optional_json(w.full_propagation_round)},
                                          {"window_rounds", w.window_rounds},
                                          {"post_propagation_advances", w.post_propagation_advances},
                                          {"post_propagation_deliveries", w.post_propagation_deliveries}});
  }

  json replicas = json::object();
  for (const auto& [id, c] : counters) {
    replicas[std::to_string(id)] = {{"accepted_messages", c.accepted_messages},
                                    {"rejected_messages", c.rejected_messages},
                                    {"missing_dependencies", c.missing_dependencies},
                                    {"rejected_logs", c.rejected_logs},
                                    {"rejected_records", c.rejected_records},
                                    {"misbehavior_records", misbehavior_records.at(id)}};
  }
  j["replicas"] = std::move(replicas);

  j["snapshot"] = json::array();
  std::size_t start = 0;
  while (start < snapshot.size()) {
    std::size_t end = snapshot.find('\n', start);
    j["snapshot"].push_back(snapshot.substr(start, end - start));
    start = end + 1;
  }

  j["assertions"] = json::array();
  for (const auto& a : assertions) {
    j["assertions"].push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  }
  return j.dump(2) + "\n";
}

SimReport run(const Scenario& scenario, std::uint64_t seed) { return Simulation(scenario, seed).run(); }

WindowProbe window_of_opportunity_probe(const Scenario& scenario, std::uint64_t seed) {
  SimReport report = run(scenario, seed);
  WindowProbe probe;
  probe.windows = report.windows;
  probe.passed = std::all_of(probe.windows.begin(), probe.windows.end(), [](const WindowStats& w) {
    return !w.first_detection_round || (w.full_propagation_round && w.post_propagation_advances == 0);
  });
  return probe;
}

}  // namespace bftlog
