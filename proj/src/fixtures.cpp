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

#include "bftlog/fixtures.hpp"

namespace bftlog {

namespace {

Fixture build() {
  Fixture f;
  f.alice = Keypair::from_label("bftlog-fixture/alice");
  f.bob = Keypair::from_label("bftlog-fixture/bob");
  f.carol = Keypair::from_label("bftlog-fixture/carol");

  f.a1 = Message::create(f.alice, std::nullopt, {}, "a1");
  f.id_a1 = msg_id(f.a1);
  f.a2 = Message::create(f.alice, f.id_a1, {}, "a2");
  f.id_a2 = msg_id(f.a2);
  f.a3 = Message::create(f.alice, f.id_a2, {}, "a3");
  f.id_a3 = msg_id(f.a3);
  f.a2p = Message::create(f.alice, f.id_a1, {}, "a2'");
  f.id_a2p = msg_id(f.a2p);
  f.a3p = Message::create(f.alice, f.id_a2, {}, "a3'");
  f.id_a3p = msg_id(f.a3p);
  f.b1 = Message::create(f.bob, std::nullopt, {f.id_a1}, "b1");
  f.id_b1 = msg_id(f.b1);
  f.c1 = Message::create(f.carol, std::nullopt, {}, "c1");
  f.id_c1 = msg_id(f.c1);
  f.c1p = Message::create(f.carol, std::nullopt, {}, "c1'");
  f.id_c1p = msg_id(f.c1p);
  return f;
}

}  // namespace

std::vector<Message> Fixture::messages() const { return {a1, a2, a3, a2p, a3p, b1, c1, c1p}; }

MessageStore Fixture::store() const {
  MessageStore s;
  for (const auto& m : messages()) s.insert(m);
  return s;
}

const Fixture& Fixture::get() {
  static const Fixture fixture = build();
  return fixture;
}

std::string golden_vector_line(const Message& m) {
  std::string deps;
  for (const auto& d : m.deps) {
    if (!deps.empty()) deps += ',';
    deps += d.hex();
  }
  std::string out = msg_id(m).hex();
  out += ' ' + m.author.hex();
  out += ' ' + ref_hex(m.prev);
  out += ' ' + (deps.empty() ? std::string("-") : deps);
  out += ' ' + (m.payload.empty() ? std::string("-") : to_hex(m.payload));
  out += ' ' + m.signature.hex();
  return out;
}

std::string golden_vectors(const std::vector<Message>& messages) {
  std::string out;
  for (const auto& m : messages) out += golden_vector_line(m) + '\n';
  return out;
}

}  // namespace bftlog
