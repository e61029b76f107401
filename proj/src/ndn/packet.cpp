// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/ndn/packet.hpp"

#include <charconv>
#include <functional>

#include "abbe/errors.hpp"

namespace abbe::ndn {

namespace {

constexpr std::string_view kSegPrefix = "seg=";

void put_u16(std::vector<std::uint8_t>& o, std::uint32_t v) {
  o.push_back(static_cast<std::uint8_t>(v >> 8));
  o.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& o, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) o.push_back(static_cast<std::uint8_t>(v >> s));
}

struct Reader {
  std::span<const std::uint8_t> b;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (b.size() - pos < n) throw Error(ErrorCode::kDecode, "truncated frame");
  }
  std::uint32_t u8() {
    need(1);
    return b[pos++];
  }
  std::uint32_t u16() {
    need(2);
    std::uint32_t v = (std::uint32_t{b[pos]} << 8) | b[pos + 1];
    pos += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | b[pos + i];
    pos += 4;
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = b.subspan(pos, n);
    pos += n;
    return s;
  }
};

}  // namespace

Name::Name(std::vector<std::string> components, std::optional<std::uint64_t> segment)
    : components_(std::move(components)), segment_(segment) {
  if (components_.empty()) throw Error(ErrorCode::kInvalidArgument, "name needs at least one component");
  for (const auto& c : components_)
    if (c.empty() || c.find('/') != std::string::npos)
      throw Error(ErrorCode::kInvalidArgument, "invalid name component '" + c + "'");
}

Name Name::parse(std::string_view text) {
  if (text.empty() || text[0] != '/') throw Error(ErrorCode::kInvalidArgument, "name must start with '/'");
  std::vector<std::string> comps;
  std::size_t start = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('/', start);
    if (end == std::string_view::npos) end = text.size();
    comps.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  std::optional<std::uint64_t> seg;
  const std::string& last = comps.back();
  if (comps.size() > 1 && last.size() > kSegPrefix.size() && last.compare(0, kSegPrefix.size(), kSegPrefix) == 0) {
    std::uint64_t v = 0;
    const char* first = last.data() + kSegPrefix.size();
    const char* stop = last.data() + last.size();
    auto [ptr, ec] = std::from_chars(first, stop, v);
    if (ec == std::errc() && ptr == stop) {
      seg = v;
      comps.pop_back();
    }
  }
  return Name(std::move(comps), seg);
}

bool Name::has_prefix(const Name& prefix) const {
  if (prefix.components_.size() > components_.size()) return false;
  for (std::size_t i = 0; i < prefix.components_.size(); ++i)
    if (prefix.components_[i] != components_[i]) return false;
  if (prefix.segment_) return prefix.components_.size() == components_.size() && prefix.segment_ == segment_;
  return true;
}

std::string Name::to_string() const {
  std::string s;
  for (const auto& c : components_) s += "/" + c;
  if (segment_) s += "/seg=" + std::to_string(*segment_);
  return s;
}

std::size_t NameHash::operator()(const Name& n) const {
  std::size_t h = std::hash<std::optional<std::uint64_t>>()(n.segment());
  for (const auto& c : n.components()) h = h * 1000003u ^ std::hash<std::string>()(c);
  return h;
}

const Name& packet_name(const Packet& p) {
  return std::visit([](const auto& x) -> const Name& { return x.name; }, p);
}

std::vector<std::uint8_t> encode(const Packet& p) {
  std::vector<std::uint8_t> o(4, 0);
  std::string name = packet_name(p).to_string();
  if (name.size() > 0xffff) throw Error(ErrorCode::kInvalidArgument, "name too long for wire format");
  o.push_back(static_cast<std::uint8_t>(p.index() + 1));
  put_u16(o, static_cast<std::uint32_t>(name.size()));
  o.insert(o.end(), name.begin(), name.end());
  if (const auto* i = std::get_if<Interest>(&p)) {
    put_u32(o, i->nonce);
  } else if (const auto* d = std::get_if<Data>(&p)) {
    if (d->signature.size() > 0xffff) throw Error(ErrorCode::kInvalidArgument, "signature too long");
    put_u32(o, d->final_segment);
    put_u16(o, static_cast<std::uint32_t>(d->signature.size()));
    o.insert(o.end(), d->signature.begin(), d->signature.end());
    o.insert(o.end(), d->content.begin(), d->content.end());
  } else {
    o.push_back(static_cast<std::uint8_t>(std::get<Nack>(p).reason));
  }
  std::uint32_t len = static_cast<std::uint32_t>(o.size());
  for (int i = 0; i < 4; ++i) o[i] = static_cast<std::uint8_t>(len >> (24 - 8 * i));
  return o;
}

Packet decode(std::span<const std::uint8_t> frame) {
  Reader r{frame};
  if (r.u32() != frame.size()) throw Error(ErrorCode::kDecode, "frame length mismatch");
  std::uint32_t type = r.u8();
  auto nb = r.take(r.u16());
  Name name = Name::parse(std::string_view(reinterpret_cast<const char*>(nb.data()), nb.size()));
  switch (type) {
    case 1: {
      Interest i{std::move(name), r.u32()};
      if (r.pos != frame.size()) throw Error(ErrorCode::kDecode, "trailing bytes in interest");
      return i;
    }
    case 2: {
      Data d;
      d.name = std::move(name);
      d.final_segment = r.u32();
      auto sig = r.take(r.u16());
      d.signature.assign(sig.begin(), sig.end());
      auto content = r.take(frame.size() - r.pos);
      d.content.assign(content.begin(), content.end());
      return d;
    }
    case 3: {
      std::uint32_t reason = r.u8();
      if (reason != static_cast<std::uint32_t>(NackReason::kNoRoute)) throw Error(ErrorCode::kDecode, "unknown nack reason");
      if (r.pos != frame.size()) throw Error(ErrorCode::kDecode, "trailing bytes in nack");
      return Nack{std::move(name), NackReason::kNoRoute};
    }
    default:
      throw Error(ErrorCode::kDecode, "unknown packet type " + std::to_string(type));
  }
}

std::vector<std::uint8_t> signed_portion(const Data& d) {
  std::string name = d.name.to_string();
  std::vector<std::uint8_t> o;
  o.reserve(2 + name.size() + 4 + d.content.size());
  put_u16(o, static_cast<std::uint32_t>(name.size()));
  o.insert(o.end(), name.begin(), name.end());
  put_u32(o, d.final_segment);
  o.insert(o.end(), d.content.begin(), d.content.end());
  return o;
}

}  // namespace abbe::ndn
