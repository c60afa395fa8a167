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

#ifndef BFTLOG_STORE_FILE_HPP_
#define BFTLOG_STORE_FILE_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bftlog/message_graph.hpp"

namespace bftlog {

// Store file layout: the 8-byte magic "BFTLOGS1", then one record per
// message in insertion order, each a 4-byte big-endian length followed by
// encode_message() bytes.

class StoreFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Bytes encode_store_records(std::span<const Message> messages);
void write_store_file(const std::filesystem::path& path, std::span<const Message> messages);
void write_store_file(const std::filesystem::path& path, const MessageStore& store);

/// Parses records without validating them. Throws StoreFileError on a
/// framing or decoding error.
std::vector<Message> read_store_file(const std::filesystem::path& path);
std::vector<Message> decode_store_records(ByteView bytes);

struct ReplayResult {
  MessageStore store;
  std::size_t accepted = 0;
  std::size_t duplicates = 0;
  struct Failure {
    std::size_t record;
    Digest id;
    Violation reason;
  };
  std::optional<Failure> first_failure;
};

/// Inserts records in file order, stopping at the first rejection.
ReplayResult replay(std::span<const Message> records, bool strict_monotonic_deps = false);

}  // namespace bftlog

#endif  // BFTLOG_STORE_FILE_HPP_
