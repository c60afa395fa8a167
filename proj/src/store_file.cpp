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

#include "bftlog/store_file.hpp"

#include <fstream>
#include <iterator>
#include <string_view>

namespace bftlog {

namespace {

constexpr std::string_view kMagic = "BFTLOGS1";

}  // namespace

Bytes encode_store_records(std::span<const Message> messages) {
  Bytes out(kMagic.begin(), kMagic.end());
  for (const auto& m : messages) {
    auto body = encode_message(m);
    auto len = static_cast<std::uint32_t>(body.size());
    out.push_back(static_cast<std::uint8_t>(len >> 24));
    out.push_back(static_cast<std::uint8_t>(len >> 16));
    out.push_back(static_cast<std::uint8_t>(len >> 8));
    out.push_back(static_cast<std::uint8_t>(len));
    out.insert(out.end(), body.begin(), body.end());
  }
  return out;
}

void write_store_file(const std::filesystem::path& path, std::span<const Message> messages) {
  auto bytes = encode_store_records(messages);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StoreFileError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw StoreFileError("write failed: " + path.string());
}

void write_store_file(const std::filesystem::path& path, const MessageStore& store) {
  std::vector<Message> messages;
  for (const auto& id : store.ids()) messages.push_back(store.get(id));
  write_store_file(path, messages);
}

std::vector<Message> decode_store_records(ByteView bytes) {
  if (bytes.size() < kMagic.size() ||
      std::string_view(reinterpret_cast<const char*>(bytes.data()), kMagic.size()) != kMagic) {
    throw StoreFileError("not a store file (bad magic)");
  }
  std::vector<Message> out;
  std::size_t pos = kMagic.size();
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 4) throw StoreFileError("truncated record header");
    std::uint32_t len = (std::uint32_t{bytes[pos]} << 24) | (std::uint32_t{bytes[pos + 1]} << 16) |
                        (std::uint32_t{bytes[pos + 2]} << 8) | std::uint32_t{bytes[pos + 3]};
    pos += 4;
    if (bytes.size() - pos < len) throw StoreFileError("truncated record body");
    auto m = decode_message(bytes.subspan(pos, len));
    if (!m) throw StoreFileError("malformed record #" + std::to_string(out.size()));
    out.push_back(std::move(*m));
    pos += len;
  }
  return out;
}

std::vector<Message> read_store_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreFileError("cannot open " + path.string());
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_store_records(bytes);
}

ReplayResult replay(std::span<const Message> records, bool strict_monotonic_deps) {
  ReplayResult result{MessageStore(strict_monotonic_deps), 0, 0, std::nullopt};
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto r = result.store.insert(records[i]);
    if (r.accepted()) {
      ++result.accepted;
    } else if (r.rejected()) {
      result.first_failure = ReplayResult::Failure{i, r.id, *r.reason};
      break;
    } else {
      ++result.duplicates;
    }
  }
  return result;
}

}  // namespace bftlog
