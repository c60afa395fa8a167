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

#include "bftlog/message.hpp"

#include <cstring>

namespace bftlog {

namespace {

class Reader {
 public:
  explicit Reader(ByteView bytes) : bytes_(bytes) {}

  bool done() const { return pos_ == bytes_.size(); }

  // Reads `tag len content`; returns nullopt on any framing error.
  std::optional<ByteView> field(char& tag) {
    if (bytes_.size() - pos_ < 5) return std::nullopt;
    tag = static_cast<char>(bytes_[pos_]);
    std::uint32_t len = (std::uint32_t{bytes_[pos_ + 1]} << 24) |
                        (std::uint32_t{bytes_[pos_ + 2]} << 16) |
                        (std::uint32_t{bytes_[pos_ + 3]} << 8) |
                        std::uint32_t{bytes_[pos_ + 4]};
    pos_ += 5;
    if (bytes_.size() - pos_ < len) return std::nullopt;
    auto out = bytes_.subspan(pos_, len);
    pos_ += len;
    return out;
  }

 private:
  ByteView bytes_;
  std::size_t pos_ = 0;
};

template <typename T>
T copy_fixed(ByteView view) {
  T out;
  std::memcpy(out.bytes.data(), view.data(), T::kSize);
  return out;
}

}  // namespace

Message Message::create(const Keypair& keys, MsgRef prev, DigestSet deps, Bytes payload) {
  Message m{keys.author, prev, std::move(deps), std::move(payload), {}};
  m.signature = sign(keys.secret, m.author, m.prev, m.deps, m.payload);
  return m;
}

Message Message::create(const Keypair& keys, MsgRef prev, DigestSet deps,
                        std::string_view payload) {
  return create(keys, prev, std::move(deps), Bytes(payload.begin(), payload.end()));
}

Bytes encode_message(const Message& m) {
  auto out = canonical_encode(m.author, m.prev, m.deps, m.payload);
  out.push_back(static_cast<std::uint8_t>('S'));
  out.push_back(0);
  out.push_back(0);
  out.push_back(0);
  out.push_back(static_cast<std::uint8_t>(Signature::kSize));
  out.insert(out.end(), m.signature.bytes.begin(), m.signature.bytes.end());
  return out;
}

Digest msg_id(const Message& m) { return sha256(encode_message(m)); }

bool verify(const Message& m) {
  return verify_fields(m.author, m.prev, m.deps, m.payload, m.signature);
}

std::optional<Message> decode_message(ByteView bytes) {
  Reader in(bytes);
  Message m;
  char tag = 0;

  auto author = in.field(tag);
  if (!author || tag != 'A' || author->size() != Author::kSize) return std::nullopt;
  m.author = copy_fixed<Author>(*author);

  auto prev = in.field(tag);
  if (!prev) return std::nullopt;
  if (tag == 'P' && prev->size() == Digest::kSize) {
    m.prev = copy_fixed<Digest>(*prev);
  } else if (tag != 'N' || !prev->empty()) {
    return std::nullopt;
  }

  auto deps = in.field(tag);
  if (!deps || tag != 'D' || deps->size() % Digest::kSize != 0) return std::nullopt;
  for (std::size_t off = 0; off < deps->size(); off += Digest::kSize) {
    auto d = copy_fixed<Digest>(deps->subspan(off, Digest::kSize));
    if (!m.deps.empty() && !(*m.deps.rbegin() < d)) return std::nullopt;
    m.deps.insert(m.deps.end(), d);
  }

  auto payload = in.field(tag);
  if (!payload || tag != 'Y') return std::nullopt;
  m.payload.assign(payload->begin(), payload->end());

  auto sig = in.field(tag);
  if (!sig || tag != 'S' || sig->size() != Signature::kSize) return std::nullopt;
  m.signature = copy_fixed<Signature>(*sig);

  if (!in.done()) return std::nullopt;
  return m;
}

}  // namespace bftlog
