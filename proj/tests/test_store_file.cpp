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

#include <filesystem>
#include <fstream>

#include "bftlog/fixtures.hpp"
#include "bftlog/store_file.hpp"

namespace bftlog {
namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::path(::testing::TempDir()) / name;
}

TEST(StoreFile, RoundTripKeepsIdsAndOrder) {
  const auto& f = Fixture::get();
  auto path = temp_path("fixture.store");
  write_store_file(path, f.store());
  auto records = read_store_file(path);
  auto result = replay(records);
  EXPECT_FALSE(result.first_failure.has_value());
  EXPECT_EQ(result.accepted, f.messages().size());
  EXPECT_EQ(result.store.ids(), f.store().ids());
}

TEST(StoreFile, ReplayStopsAtFirstViolation) {
  const auto& f = Fixture::get();
  auto messages = f.messages();
  messages.push_back(Message::create(f.carol, f.id_c1, {f.id_a1, f.id_a2}, "m4"));
  messages.push_back(f.a1);
  auto result = replay(messages);
  ASSERT_TRUE(result.first_failure.has_value());
  EXPECT_EQ(result.first_failure->record, 8u);
  EXPECT_EQ(result.first_failure->reason, Violation::kM4);
  EXPECT_EQ(result.accepted, 8u);
}

TEST(StoreFile, DuplicatesAreCounted) {
  const auto& f = Fixture::get();
  std::vector<Message> messages{f.a1, f.a1, f.a2};
  auto result = replay(messages);
  EXPECT_EQ(result.accepted, 2u);
  EXPECT_EQ(result.duplicates, 1u);
}

TEST(StoreFile, RejectsBadMagicAndTruncation) {
  Bytes bytes = encode_store_records(Fixture::get().messages());
  Bytes bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(decode_store_records(bad), StoreFileError);
  Bytes cut(bytes.begin(), bytes.end() - 3);
  EXPECT_THROW(decode_store_records(cut), StoreFileError);
  EXPECT_THROW(read_store_file(temp_path("does-not-exist")), StoreFileError);
}

}  // namespace
}  // namespace bftlog
