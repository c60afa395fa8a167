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

#ifndef BFTLOG_MESSAGE_HPP_
#define BFTLOG_MESSAGE_HPP_

#include <optional>
#include <string_view>

#include "bftlog/identity_crypto.hpp"

namespace bftlog {

/// Immutable node of the signed hash graph. `prev` links to the previous
/// message of the same author; `deps` to messages of other authors.
struct Message {
  Author author;
  MsgRef prev;
  DigestSet deps;
  Bytes payload;
  Signature signature;

  bool operator==(const Message&) const = default;

  /// Builds and signs a message with the keypair's author.
  static Message create(const Keypair& keys, MsgRef prev, DigestSet deps, Bytes payload);
  static Message create(const Keypair& keys, MsgRef prev, DigestSet deps,
                        std::string_view payload);

  std::string_view payload_text() const {
    return {reinterpret_cast<const char*>(payload.data()), payload.size()};
  }
};

/// SHA-256 over the canonical encoding followed by the signature frame.
Digest msg_id(const Message& m);

/// True iff the signature checks out against the first four fields.
bool verify(const Message& m);

/// canonical_encode(...) || 'S' len signature. This is also the store
/// file record body.
Bytes encode_message(const Message& m);

/// Strict inverse of encode_message: rejects trailing bytes, unsorted or
/// duplicate deps, and unknown tags.
std::optional<Message> decode_message(ByteView bytes);

}  // namespace bftlog

#endif  // BFTLOG_MESSAGE_HPP_
