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

#include "bftlog/identity_crypto.hpp"

#include <sodium.h>

#include <stdexcept>

namespace bftlog {

namespace {

void ensure_sodium() {
  static const bool ready = [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium failed to initialize");
    return true;
  }();
  (void)ready;
}

void put_u32(Bytes& out, std::uint32_t value) {
  out.push_back(static_cast<std::uint8_t>(value >> 24));
  out.push_back(static_cast<std::uint8_t>(value >> 16));
  out.push_back(static_cast<std::uint8_t>(value >> 8));
  out.push_back(static_cast<std::uint8_t>(value));
}

void put_field(Bytes& out, char tag, ByteView content) {
  out.push_back(static_cast<std::uint8_t>(tag));
  put_u32(out, static_cast<std::uint32_t>(content.size()));
  out.insert(out.end(), content.begin(), content.end());
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::optional<Bytes> from_hex(std::string_view text) {
  if (text.size() % 2 != 0) return std::nullopt;
  Bytes out(text.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(text[2 * i]);
    int lo = hex_value(text[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

std::string ref_hex(const MsgRef& ref) { return ref ? ref->hex() : "-"; }

AuthorSecret::~AuthorSecret() { sodium_memzero(key_.data(), key_.size()); }

Keypair Keypair::from_seed(std::span<const std::uint8_t, 32> seed) {
  ensure_sodium();
  Keypair kp;
  std::array<std::uint8_t, 64> sk{};
  crypto_sign_seed_keypair(kp.author.bytes.data(), sk.data(), seed.data());
  kp.secret = AuthorSecret(sk);
  sodium_memzero(sk.data(), sk.size());
  return kp;
}

Keypair Keypair::from_label(std::string_view label) {
  auto seed = sha256(ByteView(reinterpret_cast<const std::uint8_t*>(label.data()), label.size()));
  return from_seed(std::span<const std::uint8_t, 32>(seed.bytes));
}

Keypair Keypair::generate() {
  ensure_sodium();
  std::array<std::uint8_t, 32> seed{};
  randombytes_buf(seed.data(), seed.size());
  auto kp = from_seed(seed);
  sodium_memzero(seed.data(), seed.size());
  return kp;
}

Digest sha256(ByteView data) {
  ensure_sodium();
  Digest out;
  crypto_hash_sha256(out.bytes.data(), data.data(), data.size());
  return out;
}

Bytes canonical_encode(const Author& author, const MsgRef& prev,
                       const DigestSet& deps, ByteView payload) {
  Bytes out;
  out.reserve(1 + 4 + 32 + 1 + 4 + 32 + 1 + 4 + deps.size() * 32 + 1 + 4 + payload.size());
  put_field(out, 'A', author.view());
  if (prev) {
    put_field(out, 'P', prev->view());
  } else {
    put_field(out, 'N', {});
  }
  out.push_back(static_cast<std::uint8_t>('D'));
  put_u32(out, static_cast<std::uint32_t>(deps.size() * Digest::kSize));
  for (const auto& d : deps) out.insert(out.end(), d.bytes.begin(), d.bytes.end());
  put_field(out, 'Y', payload);
  return out;
}

Signature sign(const AuthorSecret& secret, const Author& author,
               const MsgRef& prev, const DigestSet& deps, ByteView payload) {
  ensure_sodium();
  // The public half of a libsodium secret key lives in its upper 32 bytes.
  if (std::memcmp(secret.raw().data() + 32, author.bytes.data(), 32) != 0) {
    throw std::invalid_argument("sign: secret key does not belong to author " + author.hex());
  }
  auto encoded = canonical_encode(author, prev, deps, payload);
  Signature sig;
  crypto_sign_detached(sig.bytes.data(), nullptr, encoded.data(), encoded.size(),
                       secret.raw().data());
  return sig;
}

bool verify_fields(const Author& author, const MsgRef& prev,
                   const DigestSet& deps, ByteView payload,
                   const Signature& signature) {
  ensure_sodium();
  auto encoded = canonical_encode(author, prev, deps, payload);
  return crypto_sign_verify_detached(signature.bytes.data(), encoded.data(),
                                     encoded.size(), author.bytes.data()) == 0;
}

}  // namespace bftlog
