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

#ifndef BFTLOG_FIXTURES_HPP_
#define BFTLOG_FIXTURES_HPP_

#include <string>
#include <vector>

#include "bftlog/message_graph.hpp"

namespace bftlog {

/// Small deterministic message graph used by tests and golden vectors.
///
///   alice:  a1 <- a2 <- a3        b1 (bob) depends on a1
///            ^     ^
///            |     +-- a3p        carol: c1, c1p are two roots
///            +-- a2p
struct Fixture {
  Keypair alice;
  Keypair bob;
  Keypair carol;

  Message a1, a2, a3, a2p, a3p, b1, c1, c1p;
  Digest id_a1, id_a2, id_a3, id_a2p, id_a3p, id_b1, id_c1, id_c1p;

  /// All fixture messages in a valid insertion order.
  std::vector<Message> messages() const;
  MessageStore store() const;

  static const Fixture& get();
};

/// `msg_id author prev deps payload signature`, hex encoded, `-` for an
/// absent prev or empty deps/payload, deps comma-separated in sorted order.
std::string golden_vector_line(const Message& m);
std::string golden_vectors(const std::vector<Message>& messages);

}  // namespace bftlog

#endif  // BFTLOG_FIXTURES_HPP_
