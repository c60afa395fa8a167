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
#include "bftlog/log_crdt.hpp"
#include "store_gen.hpp"

namespace bftlog {
namespace {

// Every valid state of one author's log over the given store.
std::vector<Log> all_valid_logs(const MessageStore& store, const Author& author) {
  std::vector<MsgRef> lasts{std::nullopt};
  for (const auto& id : store.ids_by_author(author)) lasts.push_back(id);
  std::vector<Log> out;
  for (const auto& last : lasts) {
    out.push_back(Log{author, last, {}});
    std::vector<Digest> children;
    for (const auto& id : store.ids_by_author(author)) {
      if (store.get(id).prev == last) children.push_back(id);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << children.size()); ++mask) {
      if (std::popcount(mask) < 2) continue;
      Log log{author, last, {}};
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (mask >> i & 1) log.forks.insert(children[i]);
      }
      out.push_back(log);
    }
  }
  return out;
}

class FixtureLog : public ::testing::Test {
 protected:
  const Fixture& f = Fixture::get();
  MessageStore store = f.store();
  Author a = f.alice.author;

  Log grow(const Digest& last) const { return Log{a, last, {}}; }
  // Shrinking at a1 with proof {a2, a2'}.
  Log shallow() const { return Log{a, f.id_a1, {f.id_a2, f.id_a2p}}; }
  // Shrinking at a2 with proof {a3, a3'}.
  Log deep() const { return Log{a, f.id_a2, {f.id_a3, f.id_a3p}}; }
};

TEST_F(FixtureLog, Initialize) {
  Log log = initialize_log(a);
  EXPECT_EQ(log, (Log{a, std::nullopt, {}}));
  EXPECT_TRUE(check_log(store, log).valid);
  for (const auto& id : {f.id_a1, f.id_a2, f.id_a3, f.id_a2p}) {
    EXPECT_TRUE(log_leq(store, log, grow(id)));
  }
}

TEST_F(FixtureLog, AppendNewer) { EXPECT_EQ(append(store, grow(f.id_a1), f.id_a2), grow(f.id_a2)); }

TEST_F(FixtureLog, AppendPredecessorIsNoop) {
  EXPECT_EQ(append(store, grow(f.id_a3), f.id_a2), grow(f.id_a3));
  EXPECT_EQ(append(store, grow(f.id_a3), f.id_a3), grow(f.id_a3));
}

TEST_F(FixtureLog, AppendConcurrentForks) {
  EXPECT_EQ(append(store, grow(f.id_a2), f.id_a2p), shallow());
}

TEST_F(FixtureLog, AppendToShrinkingWithoutNewProofIsNoop) {
  EXPECT_EQ(append(store, shallow(), f.id_a3), shallow());
  EXPECT_EQ(append(store, shallow(), f.id_a1), shallow());
}

TEST_F(FixtureLog, AppendToShrinkingWithEarlierForkShrinksFurther) {
  Log out = append(store, deep(), f.id_a2p);
  EXPECT_EQ(out, shallow());
}

TEST_F(FixtureLog, AppendFromBottomTakesFirstMessage) {
  EXPECT_EQ(append(store, initialize_log(a), f.id_a1), grow(f.id_a1));
  // A message that skips ahead is still newer on the chain.
  EXPECT_EQ(append(store, initialize_log(a), f.id_a3), grow(f.id_a3));
}

TEST_F(FixtureLog, AppendRejectsForeignOrUnknownMessages) {
  EXPECT_THROW(append(store, grow(f.id_a1), f.id_b1), AuthorMismatchError);
  EXPECT_THROW(append(store, grow(f.id_a1), sha256(Bytes{1})), UnknownMessageError);
}

TEST_F(FixtureLog, OrderGrowingByChain) {
  EXPECT_TRUE(log_leq(store, grow(f.id_a2), grow(f.id_a3)));
  EXPECT_FALSE(log_leq(store, grow(f.id_a3), grow(f.id_a2)));
  EXPECT_FALSE(log_leq(store, grow(f.id_a2), grow(f.id_a2p)));
}

TEST_F(FixtureLog, OrderGrowingBelowShrinking) {
  EXPECT_TRUE(log_leq(store, grow(f.id_a3), shallow()));
  EXPECT_FALSE(log_leq(store, shallow(), grow(f.id_a3)));
  EXPECT_TRUE(log_leq(store, grow(f.id_a3), deep()));
  EXPECT_FALSE(log_leq(store, deep(), grow(f.id_a3)));
}

TEST_F(FixtureLog, OrderShrunkMoreIsLarger) {
  EXPECT_TRUE(log_leq(store, deep(), shallow()));
  EXPECT_FALSE(log_leq(store, shallow(), deep()));
}

TEST_F(FixtureLog, OrderAcrossAuthorsThrows) {
  EXPECT_THROW(log_leq(store, grow(f.id_a1), initialize_log(f.bob.author)), AuthorMismatchError);
  EXPECT_THROW(log_join(store, grow(f.id_a1), initialize_log(f.bob.author)), AuthorMismatchError);
}

TEST_F(FixtureLog, JoinExamples) {
  EXPECT_EQ(log_join(store, grow(f.id_a2), grow(f.id_a3)), grow(f.id_a3));
  EXPECT_EQ(log_join(store, grow(f.id_a2), grow(f.id_a2p)), shallow());
  EXPECT_EQ(log_join(store, shallow(), grow(f.id_a1)), shallow());
  EXPECT_EQ(log_join(store, grow(f.id_a1), shallow()), shallow());
  EXPECT_EQ(log_join(store, deep(), shallow()), shallow());
  EXPECT_EQ(log_join(store, deep(), grow(f.id_a2p)), shallow());
}

TEST_F(FixtureLog, JoinIsIdempotentOnEveryState) {
  for (const auto& log : all_valid_logs(store, a)) EXPECT_EQ(log_join(store, log, log), log);
}

TEST_F(FixtureLog, ValidityExamples) {
  EXPECT_TRUE(check_log(store, grow(f.id_a2)).valid);
  auto lone = check_log(store, Log{a, f.id_a1, {f.id_a2}});
  EXPECT_FALSE(lone.valid);
  EXPECT_TRUE(lone.violates(LogProperty::kFL6));
  auto misplaced = check_log(store, Log{a, f.id_a2, {f.id_a2p, f.id_a3}});
  EXPECT_FALSE(misplaced.valid);
  EXPECT_TRUE(misplaced.violates(LogProperty::kFL7));
}

// One violation per label; the emptiness of forks decides which family is
// checked, so CL1 and FL1 cannot fail on their own.
TEST_F(FixtureLog, EachLabelIsReportedForItsViolation) {
  Digest unknown = sha256(Bytes{42});
  auto only = [&](const Log& log, LogProperty p) {
    auto r = check_log(store, log);
    EXPECT_FALSE(r.valid) << render(log);
    EXPECT_EQ(r.violated, std::vector<LogProperty>{p}) << r.describe();
  };
  only(Log{a, unknown, {}}, LogProperty::kCL2);
  only(Log{a, f.id_b1, {}}, LogProperty::kCL3);
  only(Log{f.bob.author, f.id_a1, {}}, LogProperty::kCL3);

  auto b2 = Message::create(f.bob, f.id_b1, {}, "b2");
  auto b2p = Message::create(f.bob, f.id_b1, {}, "b2'");
  store.insert(b2);
  store.insert(b2p);
  // A foreign last drags its children's author along with it.
  auto fl3 = check_log(store, Log{a, f.id_b1, {msg_id(b2), msg_id(b2p)}});
  EXPECT_EQ(fl3.violated, (std::vector<LogProperty>{LogProperty::kFL3, LogProperty::kFL5}));
  only(Log{a, f.id_a1, {f.id_a2, f.id_a2p, unknown}}, LogProperty::kFL4);
  auto r = check_log(store, Log{a, unknown, {f.id_a2, f.id_a2p}});
  EXPECT_TRUE(r.violates(LogProperty::kFL2));
  only(Log{a, f.id_a1, {f.id_a2}}, LogProperty::kFL6);
  auto fl5 = check_log(store, Log{f.bob.author, f.id_a1, {f.id_a2, f.id_a2p}});
  EXPECT_TRUE(fl5.violates(LogProperty::kFL5));
  auto fl7 = check_log(store, Log{a, f.id_a2, {f.id_a2p, f.id_a3p, f.id_a3}});
  EXPECT_TRUE(fl7.violates(LogProperty::kFL7));
}

TEST_F(FixtureLog, EquivalenceIgnoresForkSet) {
  Log bigger{a, f.id_a1, {f.id_a2, f.id_a2p}};
  Log other{a, f.id_a1, {f.id_a2p, f.id_a2}};
  EXPECT_TRUE(log_equivalent(bigger, other));
  EXPECT_FALSE(log_equivalent(shallow(), deep()));
  EXPECT_FALSE(log_equivalent(grow(f.id_a1), shallow()));
}

TEST_F(FixtureLog, KeepTwoForksKeepsLowestDigests) {
  auto third = Message::create(f.alice, f.id_a1, {}, "a2''");
  store.insert(third);
  Log log{a, f.id_a1, {f.id_a2, f.id_a2p, msg_id(third)}};
  Log compact = keep_two_forks(log);
  ASSERT_EQ(compact.forks.size(), 2u);
  EXPECT_EQ(*compact.forks.begin(), *log.forks.begin());
  EXPECT_TRUE(check_log(store, compact).valid);
  EXPECT_EQ(keep_two_forks(shallow()), shallow());
}

TEST_F(FixtureLog, Render) {
  EXPECT_EQ(render(initialize_log(a)), a.hex() + " [growing last=-]");
  EXPECT_EQ(render(shallow()), a.hex() + " [shrinking last=" + f.id_a1.hex() + " forks={" +
                                   shallow().forks.begin()->hex() + "," +
                                   std::next(shallow().forks.begin())->hex() + "}]");
}

// With "every growing state below every shrinking state", growing a2' and
// shrinking-at-a2 have the latter as least upper bound, yet the join
// shrinks all the way to a1.
TEST_F(FixtureLog, UnconditionalPhaseRuleBreaksLeastUpperBound) {
  const auto rule = LogOrderRule::kUnconditionalPhase;
  Log g = grow(f.id_a2p);
  Log s = deep();
  EXPECT_TRUE(log_leq(store, g, s, rule));
  EXPECT_TRUE(log_leq(store, s, s, rule));
  Log joined = log_join(store, g, s);
  EXPECT_EQ(joined, shallow());
  EXPECT_FALSE(log_leq(store, joined, s, rule));
  // The refined rule does not place g below s, so s is no upper bound.
  EXPECT_FALSE(log_leq(store, g, s));
}

TEST_F(FixtureLog, FlippedRuleMakesJoinNoUpperBound) {
  Log joined = log_join(store, grow(f.id_a3), shallow());
  EXPECT_FALSE(log_leq(store, grow(f.id_a3), joined, LogOrderRule::kFlippedPhase));
}

// Random append/join walks over random single-author stores.
TEST(LogProperties, OperationsAreMonotoneValidAndNeverRegrow) {
  CounterRng rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    auto messages = testing::random_messages(rng, 2 + rng.below(8), 1);
    MessageStore store;
    for (const auto& m : messages) store.insert(m);
    Author author = messages.front().author;
    auto states = all_valid_logs(store, author);
    auto ids = store.ids();

    for (const auto& log : states) {
      ASSERT_TRUE(check_log(store, log).valid) << render(log);
      for (const auto& m : ids) {
        Log next = append(store, log, m);
        EXPECT_TRUE(check_log(store, next).valid);
        EXPECT_TRUE(log_leq(store, log, next)) << render(log) << " + " << m.hex();
        if (log.shrinking()) {
          EXPECT_TRUE(next.shrinking());
          EXPECT_TRUE(store.leq_log(next.last, log.last));
        }
      }
      for (const auto& other : states) {
        Log j = log_join(store, log, other);
        EXPECT_TRUE(check_log(store, j).valid);
        EXPECT_TRUE(log_leq(store, log, j));
        EXPECT_TRUE(log_leq(store, other, j));
        EXPECT_EQ(j, log_join(store, other, log));
        if (log.shrinking() || other.shrinking()) {
          EXPECT_TRUE(j.shrinking());
        }
      }
    }
  }
}

}  // namespace
}  // namespace bftlog
