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


#include <gtest/gtest.h>

#include "bftlog/fixtures.hpp"
#include "bftlog/simulation.hpp"

namespace bftlog {
namespace {

const std::vector<Message> kNoHistory;

Replica make_replica(int id, ReplicaBehavior behavior = ReplicaBehavior::kCorrect) {
  return Replica(id, behavior, 1.0, false);
}

std::string scenario_json(const std::string& replicas, const std::string& graph,
                          const std::string& authors, int rounds = 12, int syncs = 4) {
  return R"({"name": "t", "rounds": )" + std::to_string(rounds) + R"(, "syncs_per_round": )" +
         std::to_string(syncs) + R"(, "replicas": )" + replicas + ", " + graph +
         R"(, "authors": )" + authors + "}";
}

const std::string kThreeCorrect =
    R"([{"id": 0}, {"id": 1}, {"id": 2}])";
const std::string kCompleteThree = R"("sync_graph": [[0, 1], [1, 2], [0, 2]])";

TEST(Sync, DisjointChainsJoin) {
  const auto& f = Fixture::get();
  Replica r1 = make_replica(1);
  Replica r2 = make_replica(2);
  deliver(r1, kNoHistory, f.a1);
  deliver(r1, kNoHistory, f.a2);
  deliver(r2, kNoHistory, f.c1);
  Frontier before = r2.frontier;
  CounterRng rng(1);
  sync(r2, r1, rng);
  MessageStore both = f.store();
  EXPECT_EQ(r2.frontier, frontier_join(both, before, r1.frontier));
  EXPECT_EQ(r2.frontier.find(f.alice.author)->last, f.id_a2);
  EXPECT_EQ(r2.frontier.find(f.carol.author)->last, f.id_c1);
}

TEST(Sync, BranchesMeetAndShrink) {
  const auto& f = Fixture::get();
  Replica r1 = make_replica(1);
  Replica r2 = make_replica(2);
  deliver(r1, kNoHistory, f.a1);
  deliver(r1, kNoHistory, f.a2);
  deliver(r2, std::vector<Message>{f.a1}, f.a2p);
  CounterRng rng(1);
  sync(r1, r2, rng);
  sync(r2, r1, rng);
  for (const Replica* r : {&r1, &r2}) {
    const Log* log = r->frontier.find(f.alice.author);
    ASSERT_NE(log, nullptr);
    EXPECT_TRUE(log->shrinking());
    EXPECT_EQ(log->last, f.id_a1);
    EXPECT_EQ(log->forks, (DigestSet{f.id_a2, f.id_a2p}));
  }
  EXPECT_EQ(snapshot(r1.frontier), snapshot(r2.frontier));
}

TEST(Sync, OmittingSenderSendsNothing) {
  const auto& f = Fixture::get();
  Replica byzantine = make_replica(1, ReplicaBehavior::kOmit);
  Replica r2 = make_replica(2);
  deliver(byzantine, kNoHistory, f.a1);
  CounterRng rng(1);
  sync(r2, byzantine, rng);
  EXPECT_TRUE(r2.frontier.empty());
  EXPECT_EQ(r2.store.size(), 0u);
}

TEST(Sync, InvalidLogsAreFilteredNotJoined) {
  const auto& f = Fixture::get();
  Replica r1 = make_replica(1);
  Replica r2 = make_replica(2);
  for (const auto& m : f.messages()) receive_messages(r1, std::vector<Message>{m});
  receive_messages(r2, f.messages());
  receive_logs(r2, std::vector<Log>{Log{f.alice.author, f.id_a1, {f.id_a2}}});
  EXPECT_TRUE(r2.frontier.empty());
  EXPECT_EQ(r2.counters.rejected_logs, 1u);
}

// 100 distinct correctly signed messages that each reference two of bob's
// messages: every one is M4-invalid and provable.
std::vector<Message> misbehaving_messages(const Fixture& f, const Message& b2) {
  std::vector<Message> out;
  for (int i = 0; i < 100; ++i) {
    out.push_back(Message::create(f.carol, f.id_c1, {f.id_b1, msg_id(b2)}, "bad" + std::to_string(i)));
  }
  return out;
}

TEST(Misbehavior, AtMostOneRecordPerAuthorAndReplicated) {
  const auto& f = Fixture::get();
  const Message b2 = Message::create(f.bob, f.id_b1, {}, "b2");
  Replica r1 = make_replica(1);
  Replica r2 = make_replica(2);
  for (Replica* r : {&r1, &r2}) {
    deliver(*r, kNoHistory, f.a1);
    deliver(*r, kNoHistory, f.b1);
    deliver(*r, kNoHistory, b2);
    deliver(*r, kNoHistory, f.c1);
  }
  auto bad = misbehaving_messages(f, b2);
  receive_messages(r1, bad);
  ASSERT_EQ(r1.misbehavior.size(), 1u);
  EXPECT_EQ(r1.misbehavior.begin()->first, f.carol.author);
  EXPECT_EQ(r1.misbehavior.begin()->second, bad.front());

  CounterRng rng(1);
  sync(r2, r1, rng);
  EXPECT_EQ(r2.misbehavior.size(), 1u);
  receive_messages(r2, bad);
  EXPECT_EQ(r2.misbehavior.size(), 1u);
}

TEST(Misbehavior, BrokenSignaturesProveNothing) {
  const auto& f = Fixture::get();
  Replica r = make_replica(1);
  deliver(r, kNoHistory, f.a1);
  Message forged = Message::create(f.carol, std::nullopt, {f.id_a1}, "x");
  forged.payload.push_back('!');
  receive_messages(r, std::vector<Message>{forged});
  EXPECT_TRUE(r.misbehavior.empty());
  EXPECT_EQ(r.counters.rejected_messages, 1u);
}

TEST(Misbehavior, ForgedRecordFromPeerIsRefused) {
  const auto& f = Fixture::get();
  Replica r = make_replica(1);
  Message forged = Message::create(f.carol, std::nullopt, {}, "x");
  forged.signature.bytes[0] ^= 1;
  receive_records(r, std::vector<Message>{forged});
  EXPECT_TRUE(r.misbehavior.empty());
}

TEST(Simulation, SingleCorrectAuthorConverges) {
  auto s = parse_scenario(scenario_json(kThreeCorrect, R"("random_graph": {"extra_edge_probability": 0.5})",
                                        R"([{"name": "alice", "home": [0], "publish": {"count": 10}}])"));
  Simulation sim(s, 1);
  SimReport report = sim.run();
  EXPECT_TRUE(report.passed()) << report.to_json();
  EXPECT_TRUE(report.converged);
  const auto& alice = sim.authors().front();
  ASSERT_EQ(alice.published().size(), 10u);
  for (const auto& r : sim.replicas()) {
    const Log* log = r.frontier.find(alice.author());
    ASSERT_NE(log, nullptr);
    EXPECT_TRUE(log->growing());
    EXPECT_EQ(log->last, alice.primary_chain().back());
  }
}

TEST(Simulation, SameSeedSameReportBytes) {
  auto s = load_scenario(BFTLOG_SOURCE_DIR "/scenarios/fork_basic.json");
  EXPECT_EQ(run(s, 7).to_json(), run(s, 7).to_json());
  EXPECT_NE(run(s, 7).to_json(), run(s, 8).to_json());
}

TEST(Simulation, ForkAtIndexThreeShrinksToIt) {
  auto s = load_scenario(BFTLOG_SOURCE_DIR "/scenarios/fork_basic.json");
  Simulation sim(s, 1);
  SimReport report = sim.run();
  ASSERT_TRUE(report.passed()) << report.to_json();
  const AuthorActor& mallory = sim.authors().front();
  const Digest third = mallory.primary_chain()[2];
  DigestSet heads;
  for (const auto& m : mallory.published()) {
    if (m.prev == third) heads.insert(msg_id(m));
  }
  ASSERT_EQ(heads.size(), 2u);
  for (const auto& r : sim.replicas()) {
    if (!r.correct()) continue;
    const Log* log = r.frontier.find(mallory.author());
    ASSERT_NE(log, nullptr);
    EXPECT_EQ(log->last, third);
    EXPECT_EQ(log->forks, heads);
  }
}

TEST(Simulation, AuthorActorSplitsHomesAcrossBranches) {
  AuthorSpec spec;
  spec.name = "m";
  spec.behavior = AuthorBehavior::kForking;
  spec.home = {0, 1, 2, 3, 4};
  spec.fork_plan = {ForkStep{2, 2, 0}, ForkStep{1, 2, 5}};
  spec.publish.count = 8;
  AuthorActor actor(spec, Keypair::from_label("m"));
  Replica home = make_replica(0);
  for (std::size_t round = 0; round < 8; ++round) actor.step(round, home);
  ASSERT_EQ(actor.branches().size(), 3u);
  EXPECT_EQ(actor.branches()[0].homes, (std::vector<int>{0, 3}));
  EXPECT_EQ(actor.branches()[1].homes, (std::vector<int>{1, 4}));
  EXPECT_EQ(actor.branches()[2].homes, (std::vector<int>{2}));
  ExpectedLog want = expected_log(actor.published());
  EXPECT_TRUE(want.forked);
  EXPECT_EQ(want.last, actor.primary_chain()[0]);
  EXPECT_EQ(want.children.size(), 2u);
}

TEST(ExpectedLog, ChainsAndRoots) {
  const auto& f = Fixture::get();
  EXPECT_EQ(expected_log(std::vector<Message>{}).last, std::nullopt);
  auto chain = expected_log(std::vector<Message>{f.a1, f.a2, f.a3});
  EXPECT_FALSE(chain.forked);
  EXPECT_EQ(chain.last, f.id_a3);
  auto roots = expected_log(std::vector<Message>{f.c1, f.c1p});
  EXPECT_TRUE(roots.forked);
  EXPECT_EQ(roots.last, std::nullopt);
  auto deep = expected_log(std::vector<Message>{f.a1, f.a2, f.a3, f.a3p, f.a2p});
  EXPECT_EQ(deep.last, f.id_a1);
}

TEST(Window, ZeroWhenProofPrecedesFurtherPublishes) {
  auto s = parse_scenario(scenario_json(
      R"([{"id": 0}, {"id": 1}])", R"("sync_graph": [[0, 1]])",
      R"([{"name": "m", "behavior": "forking", "home": [0, 1],
          "fork_plan": [{"index": 3, "branches": 2}], "publish": {"count": 4}}])"));
  auto probe = window_of_opportunity_probe(s, 1);
  ASSERT_EQ(probe.windows.size(), 1u);
  EXPECT_TRUE(probe.passed);
  EXPECT_EQ(probe.windows[0].window_rounds, 0u);
}

TEST(Window, LineTopologyRacesButForkStaysDead) {
  auto s = parse_scenario(scenario_json(
      R"([{"id": 0}, {"id": 1}, {"id": 2}, {"id": 3}, {"id": 4}])",
      R"("sync_graph": [[0, 1], [1, 2], [2, 3], [3, 4]])",
      R"([{"name": "m", "behavior": "forking", "home": [0, 4],
          "fork_plan": [{"index": 2, "branches": 2}], "publish": {"count": 30}}])",
      40, 1));
  std::size_t raced = 0;
  std::size_t late = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto probe = window_of_opportunity_probe(s, seed);
    ASSERT_TRUE(probe.passed) << seed;
    raced += probe.windows[0].window_rounds > 0;
    late += probe.windows[0].post_propagation_deliveries;
    EXPECT_EQ(probe.windows[0].post_propagation_advances, 0u);
  }
  EXPECT_GT(raced, 0u);
  EXPECT_GT(late, 0u);
}

TEST(Simulation, PartialForwarderOnlyDelays) {
  auto s = parse_scenario(scenario_json(
      R"([{"id": 0}, {"id": 1}, {"id": 2}, {"id": 3, "behavior": "partial", "forward_probability": 0.5}])",
      R"("sync_graph": [[0, 1], [1, 2], [0, 3], [2, 3]])",
      R"([{"name": "m", "behavior": "forking", "home": [0, 2],
          "fork_plan": [{"index": 1, "branches": 2}], "publish": {"count": 6}},
         {"name": "a", "home": [1], "publish": {"count": 6}}])"));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SimReport report = run(s, seed);
    EXPECT_TRUE(report.passed()) << report.to_json();
  }
}

TEST(ScenarioConfig, RejectsBadScenarios) {
  const std::string author = R"([{"name": "a", "home": [0], "publish": {"count": 1}}])";
  EXPECT_THROW(parse_scenario(scenario_json(R"([{"id": 0}, {"id": 1, "behavior": "omit"}])",
                                            R"("sync_graph": [[0, 1]])", author)),
               ConfigError);
  EXPECT_THROW(parse_scenario(scenario_json(kThreeCorrect, R"("sync_graph": [[0, 1]])", author)),
               ConfigError);
  // Correct replicas connected only through a Byzantine one.
  EXPECT_THROW(parse_scenario(scenario_json(R"([{"id": 0}, {"id": 1}, {"id": 2, "behavior": "omit"}])",
                                            R"("sync_graph": [[0, 2], [2, 1]])", author)),
               ConfigError);
  EXPECT_THROW(parse_scenario(scenario_json(R"([{"id": 0}, {"id": 1}, {"id": 2, "behavior": "omit"}])",
                                            R"("sync_graph": [[0, 1], [1, 2]])",
                                            R"([{"name": "a", "home": [2], "publish": {"count": 1}}])")),
               ConfigError);
  EXPECT_THROW(parse_scenario(scenario_json(kThreeCorrect, kCompleteThree,
                                            R"([{"name": "a", "home": [9], "publish": {"count": 1}}])")),
               ConfigError);
  EXPECT_THROW(parse_scenario(scenario_json(
                   kThreeCorrect, kCompleteThree,
                   R"([{"name": "a", "behavior": "forking", "home": [0],
                        "fork_plan": [{"index": 1, "branches": 2}], "publish": {"count": 3}}])")),
               ConfigError);
  EXPECT_THROW(parse_scenario(scenario_json(
                   kThreeCorrect, kCompleteThree,
                   R"([{"name": "a", "home": [0], "publish": {"count": 1}},
                       {"name": "a", "home": [1], "publish": {"count": 1}}])")),
               ConfigError);
  EXPECT_THROW(parse_scenario(scenario_json(kThreeCorrect, kCompleteThree,
                                            R"([{"name": "a", "home": [0], "publish": {"count": 1}, "x": 1}])")),
               ConfigError);
  EXPECT_THROW(parse_scenario("{not json"), ConfigError);
  EXPECT_NO_THROW(parse_scenario(scenario_json(kThreeCorrect, kCompleteThree, author)));
}

TEST(ScenarioConfig, RandomGraphConnectsCorrectReplicas) {
  auto s = parse_scenario(scenario_json(
      R"([{"id": 0}, {"id": 1}, {"id": 2}, {"id": 3}, {"id": 4}, {"id": 5, "behavior": "omit"}])",
      R"("random_graph": {"extra_edge_probability": 0.0})",
      R"([{"name": "a", "home": [0], "publish": {"count": 1}}])"));
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CounterRng rng(seed);
    auto edges = build_sync_graph(s, rng);
    EXPECT_EQ(edges.size(), 5u);
    EXPECT_GE(correct_diameter(s, edges), 1u);
    EXPECT_LE(correct_diameter(s, edges), 4u);
    Scenario fixed = s;
    fixed.extra_edge_probability.reset();
    fixed.edges = edges;
    EXPECT_NO_THROW(validate(fixed));
  }
}

TEST(PublishPlan, Rounds) {
  PublishPlan p{2, 3, 3};
  std::vector<std::size_t> hits;
  for (std::size_t r = 0; r < 20; ++r) {
    if (p.at(r)) hits.push_back(r);
  }
  EXPECT_EQ(hits, (std::vector<std::size_t>{2, 5, 8}));
}

}  // namespace
}  // namespace bftlog
