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

#ifndef BFTLOG_IDENTITY_CRYPTO_HPP_
#define BFTLOG_IDENTITY_CRYPTO_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bftlog {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView bytes);
std::optional<Bytes> from_hex(std::string_view text);

/// Fixed-width byte string with a phantom tag so that keys, digests and
/// signatures cannot be mixed up. Ordering is byte-lexicographic.
template <std::size_t N, typename Tag>
struct FixedBytes {
  static constexpr std::size_t kSize = N;

  std::array<std::uint8_t, N> bytes{};

  auto operator<=>(const FixedBytes&) const = default;

  ByteView view() const { return bytes; }
  std::string hex() const { return to_hex(bytes); }

  static std::optional<FixedBytes> from_hex(std::string_view text) {
    auto raw = ::bftlog::from_hex(text);
    if (!raw || raw->size() != N) return std::nullopt;
    FixedBytes out;
    std::memcpy(out.bytes.data(), raw->data(), N);
    return out;
  }
};

struct AuthorTag;
struct DigestTag;
struct SignatureTag;

/// Ed25519 verification key.
using Author = FixedBytes<32, AuthorTag>;
/// SHA-256 output; names a message.
using Digest = FixedBytes<32, DigestTag>;
using Signature = FixedBytes<64, SignatureTag>;

using DigestSet = std::set<Digest>;

/// A message reference where std::nullopt stands for the virtual bottom
/// element (no previous message).
using MsgRef = std::optional<Digest>;

std::string ref_hex(const MsgRef& ref);

/// Ed25519 signing key. Never serialized.
class AuthorSecret {
 public:
  AuthorSecret() = default;
  explicit AuthorSecret(const std::array<std::uint8_t, 64>& key) : key_(key) {}
  AuthorSecret(const AuthorSecret&) = default;
  AuthorSecret& operator=(const AuthorSecret&) = default;
  ~AuthorSecret();

  const std::array<std::uint8_t, 64>& raw() const { return key_; }

 private:
  std::array<std::uint8_t, 64> key_{};
};

struct Keypair {
  Author author;
  AuthorSecret secret;

  static Keypair from_seed(std::span<const std::uint8_t, 32> seed);
  /// Deterministic keypair derived from SHA-256 of the label.
  static Keypair from_label(std::string_view label);
  static Keypair generate();
};

Digest sha256(ByteView data);

/// Injective framing of the four signed message fields:
///   'A' len author | ('P' len digest | 'N' 0) | 'D' len deps... | 'Y' len payload
/// with 4-byte big-endian lengths and deps in ascending byte order.
Bytes canonical_encode(const Author& author, const MsgRef& prev,
                       const DigestSet& deps, ByteView payload);

/// Throws std::invalid_argument when the secret does not belong to author.
Signature sign(const AuthorSecret& secret, const Author& author,
               const MsgRef& prev, const DigestSet& deps, ByteView payload);

/// Never throws; malformed keys or signatures verify as false.
bool verify_fields(const Author& author, const MsgRef& prev,
                   const DigestSet& deps, ByteView payload,
                   const Signature& signature);

}  // namespace bftlog

template <std::size_t N, typename Tag>
struct std::hash<bftlog::FixedBytes<N, Tag>> {
  std::size_t operator()(const bftlog::FixedBytes<N, Tag>& value) const noexcept {
    std::size_t h;
    std::memcpy(&h, value.bytes.data(), sizeof(h));
    return h;
  }
};

#endif  // BFTLOG_IDENTITY_CRYPTO_HPP_
