// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <deque>
#include <future>
#include <random>

#include "abbe/errors.hpp"
#include "abbe/hash.hpp"
#include "abbe/ndn/endpoints.hpp"
#include "abbe/ndn/socket.hpp"

namespace abbe::ndn {
namespace {

using namespace std::chrono_literals;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIo;
}

std::vector<std::uint8_t> random_payload(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(gen());
  return v;
}

// Upstream stand-in that records what the forwarder sends it.
class RecordingFace : public Face {
 public:
  void deliver(Packet p) override {
    std::lock_guard lock(mu);
    got.push_back(std::move(p));
  }
  std::size_t count() {
    std::lock_guard lock(mu);
    return got.size();
  }
  std::mutex mu;
  std::vector<Packet> got;
};

Data make_data(const std::string& name, std::string body) {
  Data d;
  d.name = Name::parse(name);
  d.content.assign(body.begin(), body.end());
  return d;
}

std::shared_ptr<Ed25519Signer> signer_from(std::uint64_t seed) {
  Rng rng = Rng::from_u64(seed);
  return std::make_shared<Ed25519Signer>(rng);
}

TEST(Name, ParseAndRender) {
  Name n = Name::parse("/data/file50M.bin/seg=12");
  EXPECT_EQ(n.components(), (std::vector<std::string>{"data", "file50M.bin"}));
  EXPECT_EQ(n.segment(), 12u);
  EXPECT_EQ(n.to_string(), "/data/file50M.bin/seg=12");
  EXPECT_EQ(n.size(), 3u);
  EXPECT_EQ(Name::parse("/headers/header.json").segment(), std::nullopt);
  EXPECT_EQ(Name::parse("/seg=3").components(), (std::vector<std::string>{"seg=3"}));
  EXPECT_EQ(Name::parse("/a/seg=x").components().size(), 2u);
  for (const char* bad : {"", "a/b", "/", "/a//b", "/a/"})
    EXPECT_EQ(code_of([&] { Name::parse(bad); }), ErrorCode::kInvalidArgument) << bad;
}

TEST(Name, PrefixRelation) {
  Name n = Name::parse("/a/b/seg=1");
  EXPECT_TRUE(n.has_prefix(Name::parse("/a")));
  EXPECT_TRUE(n.has_prefix(Name::parse("/a/b")));
  EXPECT_TRUE(n.has_prefix(n));
  EXPECT_FALSE(n.has_prefix(Name::parse("/a/b/seg=2")));
  EXPECT_FALSE(n.has_prefix(Name::parse("/a/b/c")));
  EXPECT_FALSE(Name::parse("/ab").has_prefix(Name::parse("/a")));
}

TEST(Name, RandomRoundTrip) {
  std::mt19937_64 gen(1);
  const std::string alphabet = "abcz09._-=~";
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::string> comps(1 + gen() % 5);
    for (auto& c : comps) {
      c.resize(1 + gen() % 8);
      for (auto& ch : c) ch = alphabet[gen() % alphabet.size()];
    }
    std::optional<std::uint64_t> seg;
    if (gen() % 2) seg = gen() % 100000;
    Name n(comps, seg);
    // A trailing "seg=<digits>" component without a segment is ambiguous in text form.
    if (!seg && comps.size() > 1 && comps.back().rfind("seg=", 0) == 0) continue;
    EXPECT_EQ(Name::parse(n.to_string()), n) << n.to_string();
  }
}

TEST(Wire, InterestLayoutCarriesNoAddresses) {
  Interest i{Name::parse("/data/x"), 0xdeadbeef};
  auto f = encode(i);
  std::vector<std::uint8_t> expect = {0, 0, 0, 18, 1, 0, 7, '/', 'd', 'a', 't', 'a', '/', 'x', 0xde, 0xad, 0xbe, 0xef};
  EXPECT_EQ(f, expect);
}

TEST(Wire, DataLayoutOmitsProducerId) {
  Data d = make_data("/a/seg=0", "hi");
  d.final_segment = 3;
  d.producer_id = "producer-with-a-long-identifier";
  d.signature = {9, 8};
  auto f = encode(d);
  std::vector<std::uint8_t> expect = {0, 0, 0, 23, 2, 0, 8, '/', 'a', '/', 's', 'e', 'g', '=', '0',
                                      0, 0, 0, 3, 0, 2, 9, 8, 'h', 'i'};
  expect[3] = static_cast<std::uint8_t>(expect.size());
  EXPECT_EQ(f, expect);
  auto back = std::get<Data>(decode(f));
  EXPECT_TRUE(back.producer_id.empty());
  EXPECT_EQ(back.content, d.content);
  EXPECT_EQ(back.signature, d.signature);
  EXPECT_EQ(back.final_segment, 3u);
}

TEST(Wire, RandomPacketsRoundTrip) {
  std::mt19937_64 gen(2);
  for (int iter = 0; iter < 300; ++iter) {
    Name n({"p" + std::to_string(gen() % 50), "q"}, gen() % 3 ? std::optional<std::uint64_t>(gen() % 1000) : std::nullopt);
    Packet p;
    switch (gen() % 3) {
      case 0:
        p = Interest{n, static_cast<std::uint32_t>(gen())};
        break;
      case 1: {
        Data d;
        d.name = n;
        d.content = random_payload(gen() % 5000, gen());
        d.final_segment = static_cast<std::uint32_t>(gen());
        d.signature = random_payload(gen() % 100, gen());
        p = d;
        break;
      }
      default:
        p = Nack{n, NackReason::kNoRoute};
    }
    auto f = encode(p);
    Packet q = decode(f);
    ASSERT_EQ(p.index(), q.index());
    EXPECT_EQ(encode(q), f);
    std::uint32_t len = (std::uint32_t{f[0]} << 24) | (std::uint32_t{f[1]} << 16) | (std::uint32_t{f[2]} << 8) | f[3];
    EXPECT_EQ(len, f.size());
    if (f.size() > 4) {
      std::vector<std::uint8_t> cut(f.begin(), f.end() - 1);
      EXPECT_EQ(code_of([&] { decode(cut); }), ErrorCode::kDecode);
    }
  }
}

TEST(Wire, RejectsUnknownType) {
  auto f = encode(Interest{Name::parse("/a"), 1});
  f[4] = 9;
  EXPECT_EQ(code_of([&] { decode(f); }), ErrorCode::kDecode);
}

TEST(Signer, SignedPortionAndDeterminism) {
  Data d = make_data("/x/seg=1", "abc");
  d.final_segment = 0x01020304;
  std::vector<std::uint8_t> expect = {0, 8, '/', 'x', '/', 's', 'e', 'g', '=', '1', 1, 2, 3, 4, 'a', 'b', 'c'};
  EXPECT_EQ(signed_portion(d), expect);

  auto s = signer_from(1);
  sign_data(d, *s);
  EXPECT_EQ(d.signature.size(), 64u);
  Data again = d;
  sign_data(again, *signer_from(1));
  EXPECT_EQ(again.signature, d.signature);
  EXPECT_TRUE(verify_data(d, *s->verifier()));
  EXPECT_FALSE(verify_data(d, *signer_from(2)->verifier()));

  Data t = d;
  t.content[0] ^= 1;
  EXPECT_FALSE(verify_data(t, *s->verifier()));
  t = d;
  t.final_segment ^= 1;
  EXPECT_FALSE(verify_data(t, *s->verifier()));
  t = d;
  t.name = Name::parse("/x/seg=2");
  EXPECT_FALSE(verify_data(t, *s->verifier()));
  t = d;
  t.producer_id = "anyone";
  EXPECT_TRUE(verify_data(t, *s->verifier()));
}

TEST(Forwarder, CsHitServesWithoutUpstream) {
  ForwarderOptions opt;
  opt.cs_capacity = 16;
  Forwarder fwd(opt);
  auto up = std::make_shared<RecordingFace>();
  FaceId up_id = fwd.add_face(up);
  fwd.register_prefix(Name::parse("/a"), up_id);
  auto c1 = AppFace::attach(fwd);
  c1->send(Interest{Name::parse("/a/seg=0"), 1});
  fwd.run_sync([] { return 0; });
  ASSERT_EQ(up->count(), 1u);
  fwd.receive(up_id, make_data("/a/seg=0", "x"));
  ASSERT_TRUE(c1->receive(Clock::now() + 2s));

  auto before = fwd.stats().upstream_interests;
  auto c2 = AppFace::attach(fwd);
  c2->send(Interest{Name::parse("/a/seg=0"), 2});
  auto got = c2->receive(Clock::now() + 2s);
  ASSERT_TRUE(got);
  EXPECT_EQ(std::get<Data>(*got).content, std::vector<std::uint8_t>{'x'});
  EXPECT_EQ(fwd.stats().upstream_interests, before);
  EXPECT_EQ(fwd.stats().cs_hits, 1u);
  EXPECT_EQ(up->count(), 1u);
}

TEST(Forwarder, PitAggregatesThreeFaces) {
  Forwarder fwd;
  auto up = std::make_shared<RecordingFace>();
  FaceId up_id = fwd.add_face(up);
  fwd.register_prefix(Name::parse("/m"), up_id);
  std::vector<std::shared_ptr<AppFace>> cs;
  for (int i = 0; i < 3; ++i) {
    cs.push_back(AppFace::attach(fwd));
    cs.back()->send(Interest{Name::parse("/m/seg=4"), static_cast<std::uint32_t>(i)});
  }
  EXPECT_EQ(fwd.pit_size(), 1u);
  EXPECT_EQ(up->count(), 1u);
  EXPECT_EQ(fwd.stats().pit_aggregated, 2u);
  fwd.receive(up_id, make_data("/m/seg=4", "payload"));
  for (auto& c : cs) {
    auto got = c->receive(Clock::now() + 2s);
    ASSERT_TRUE(got);
    EXPECT_EQ(std::get<Data>(*got).name.to_string(), "/m/seg=4");
  }
  EXPECT_EQ(fwd.pit_size(), 0u);
  EXPECT_EQ(fwd.stats().data_delivered, 3u);
  EXPECT_TRUE(fwd.cs_lookup(Name::parse("/m/seg=4")));
}

TEST(Forwarder, RetransmissionFromWaitingFaceGoesUpstream) {
  Forwarder fwd;
  auto up = std::make_shared<RecordingFace>();
  FaceId up_id = fwd.add_face(up);
  fwd.register_prefix(Name::parse("/m"), up_id);
  auto c = AppFace::attach(fwd);
  c->send(Interest{Name::parse("/m/seg=0"), 1});
  c->send(Interest{Name::parse("/m/seg=0"), 2});
  fwd.run_sync([] { return 0; });
  EXPECT_EQ(up->count(), 2u);
  EXPECT_EQ(fwd.pit_size(), 1u);
}

TEST(Forwarder, UnsolicitedDataDropped) {
  Forwarder fwd;
  auto up = std::make_shared<RecordingFace>();
  FaceId up_id = fwd.add_face(up);
  fwd.receive(up_id, make_data("/u/seg=0", "x"));
  EXPECT_EQ(fwd.cs_size(), 0u);
  EXPECT_EQ(fwd.stats().unsolicited_data, 1u);
}

TEST(Forwarder, NoRouteNack) {
  Forwarder fwd;
  auto c = AppFace::attach(fwd);
  c->send(Interest{Name::parse("/nowhere/seg=0"), 1});
  auto got = c->receive(Clock::now() + 2s);
  ASSERT_TRUE(got);
  ASSERT_TRUE(std::holds_alternative<Nack>(*got));
  EXPECT_EQ(std::get<Nack>(*got).reason, NackReason::kNoRoute);
  EXPECT_EQ(fwd.pit_size(), 0u);
}

TEST(Forwarder, LongestPrefixMatch) {
  Forwarder fwd;
  auto short_face = std::make_shared<RecordingFace>();
  auto long_face = std::make_shared<RecordingFace>();
  fwd.register_prefix(Name::parse("/a"), fwd.add_face(short_face));
  fwd.register_prefix(Name::parse("/a/b"), fwd.add_face(long_face));
  auto c = AppFace::attach(fwd);
  c->send(Interest{Name::parse("/a/b/c/seg=0"), 1});
  c->send(Interest{Name::parse("/a/bb/seg=0"), 2});
  c->send(Interest{Name::parse("/a/b/seg=0"), 3});
  fwd.run_sync([] { return 0; });
  EXPECT_EQ(long_face->count(), 2u);
  EXPECT_EQ(short_face->count(), 1u);
}

TEST(Forwarder, FifoEvictionMatchesModel) {
  for (std::size_t cap : {1u, 2u, 5u, 17u}) {
    ForwarderOptions opt;
    opt.cs_capacity = cap;
    Forwarder fwd(opt);
    auto up = std::make_shared<RecordingFace>();
    FaceId up_id = fwd.add_face(up);
    fwd.register_prefix(Name::parse("/f"), up_id);
    auto c = AppFace::attach(fwd);
    std::deque<std::string> model;
    for (std::size_t i = 0; i < cap + 1 + cap / 2; ++i) {
      std::string name = "/f/seg=" + std::to_string(i);
      c->send(Interest{Name::parse(name), static_cast<std::uint32_t>(i)});
      fwd.receive(up_id, make_data(name, name));
      ASSERT_TRUE(c->receive(Clock::now() + 2s));
      model.push_back(name);
      if (model.size() > cap) model.pop_front();
    }
    EXPECT_EQ(fwd.cs_size(), model.size());
    for (std::size_t i = 0; i < cap + 1 + cap / 2; ++i) {
      std::string name = "/f/seg=" + std::to_string(i);
      bool in_model = std::find(model.begin(), model.end(), name) != model.end();
      auto hit = fwd.cs_lookup(Name::parse(name));
      EXPECT_EQ(hit.has_value(), in_model) << name;
      if (hit) EXPECT_EQ(std::string(hit->content.begin(), hit->content.end()), name);
    }
  }
}

TEST(Forwarder, CapacityFromEnvironment) {
  ::setenv("ABBE_NDN_CS_CAPACITY", "123", 1);
  EXPECT_EQ(default_cs_capacity(), 123u);
  ::setenv("ABBE_NDN_CS_CAPACITY", "junk", 1);
  EXPECT_EQ(default_cs_capacity(), 65536u);
  ::unsetenv("ABBE_NDN_CS_CAPACITY");
  EXPECT_EQ(default_cs_capacity(), 65536u);
}

TEST(Publish, SegmentCountsAndSignatures) {
  Forwarder fwd;
  auto p = Producer::attach(fwd, "prod", signer_from(3));
  EXPECT_EQ(code_of([&] { p->publish(Name::parse("/data/x"), {1, 2, 3}); }), ErrorCode::kPrefixNotRegistered);
  p->register_prefix(Name::parse("/data"));
  EXPECT_EQ(code_of([&] { p->publish(Name::parse("/data/x"), {1}, 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { p->publish(Name::parse("/data/x"), {1}, 65537); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(p->publish(Name::parse("/data/empty"), {}), 1u);
  auto seg0 = p->segment(Name::parse("/data/empty"), 0);
  ASSERT_TRUE(seg0);
  EXPECT_TRUE(seg0->content.empty());
  EXPECT_EQ(seg0->final_segment, 0u);

  for (std::size_t n : {1u, 4095u, 4096u, 4097u, 3u * 4096 + 7}) {
    auto payload = random_payload(n, n);
    Name name = Name::parse("/data/f" + std::to_string(n));
    std::uint64_t count = p->publish(name, payload);
    EXPECT_EQ(count, (n + 4095) / 4096);
    std::vector<std::uint8_t> joined;
    for (std::uint64_t s = 0; s < count; ++s) {
      auto d = p->segment(name, s);
      ASSERT_TRUE(d);
      EXPECT_EQ(d->final_segment, count - 1);
      EXPECT_LE(d->content.size(), 4096u);
      EXPECT_TRUE(verify_data(*d, *p->verifier()));
      joined.insert(joined.end(), d->content.begin(), d->content.end());
    }
    EXPECT_FALSE(p->segment(name, count));
    EXPECT_EQ(joined, payload);
  }
}

TEST(Publish, FiftyMebibyteSegmentCount) {
  Forwarder fwd;
  auto p = Producer::attach(fwd, "prod", signer_from(4));
  p->register_prefix(Name::parse("/data"));
  EXPECT_EQ(p->publish(Name::parse("/data/file50M.bin"), std::vector<std::uint8_t>(50u << 20)), 12800u);
}

class FetchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    producer = Producer::attach(fwd, "prod", signer_from(5));
    producer->register_prefix(Name::parse("/data"));
    options.verifier = producer->verifier();
  }
  Forwarder fwd;
  std::shared_ptr<Producer> producer;
  FetchOptions options;
};

TEST_F(FetchTest, RoundTripSizes) {
  for (std::size_t n : {0u, 1u, 4095u, 4096u, 4097u, 5u << 20}) {
    auto payload = random_payload(n, 100 + n);
    Name name = Name::parse("/data/obj" + std::to_string(n));
    producer->publish(name, payload);
    auto got = fetch(fwd, name, options);
    EXPECT_EQ(sha256(got), sha256(payload)) << n;
  }
}

TEST_F(FetchTest, OddChunkSize) {
  auto payload = random_payload(100000, 7);
  producer->publish(Name::parse("/data/odd"), payload, 1000);
  EXPECT_EQ(fetch(fwd, Name::parse("/data/odd"), options), payload);
}

TEST_F(FetchTest, SecondConsumerServedFromCache) {
  auto payload = random_payload(300000, 8);
  std::uint64_t segs = producer->publish(Name::parse("/data/warm"), payload);
  EXPECT_EQ(fetch(fwd, Name::parse("/data/warm"), options), payload);
  EXPECT_EQ(producer->interests_received(), segs);
  producer->reset_counters();
  EXPECT_EQ(fetch(fwd, Name::parse("/data/warm"), options), payload);
  EXPECT_EQ(producer->interests_received(), 0u);
}

TEST_F(FetchTest, ConcurrentConsumersHitProducerOncePerSegment) {
  auto payload = random_payload(5u << 20, 9);
  std::uint64_t segs = producer->publish(Name::parse("/data/shared"), payload);
  auto digest = sha256(payload);
  for (std::size_t users : {2u, 10u}) {
    Forwarder local;
    auto prod = Producer::attach(local, "prod", signer_from(5));
    prod->register_prefix(Name::parse("/data"));
    prod->publish(Name::parse("/data/shared"), payload);
    std::vector<std::future<Digest256>> tasks;
    for (std::size_t u = 0; u < users; ++u)
      tasks.push_back(std::async(std::launch::async, [&] { return sha256(fetch(local, Name::parse("/data/shared"), options)); }));
    for (auto& t : tasks) EXPECT_EQ(t.get(), digest);
    EXPECT_EQ(prod->interests_received(), segs) << users;
    EXPECT_EQ(prod->max_requests_per_name(), 1u) << users;
  }
}

TEST_F(FetchTest, CsHoldsExactSegmentsOrEvicted) {
  ForwarderOptions opt;
  opt.cs_capacity = 10;
  Forwarder small(opt);
  auto prod = Producer::attach(small, "prod", signer_from(6));
  prod->register_prefix(Name::parse("/data"));
  auto payload = random_payload(40 * 4096 + 5, 10);
  std::uint64_t segs = prod->publish(Name::parse("/data/c"), payload);
  FetchOptions fo;
  fo.verifier = prod->verifier();
  EXPECT_EQ(fetch(small, Name::parse("/data/c"), fo), payload);
  std::size_t cached = 0;
  for (std::uint64_t s = 0; s < segs; ++s) {
    auto hit = small.cs_lookup(Name::parse("/data/c").with_segment(s));
    if (!hit) continue;
    ++cached;
    auto orig = prod->segment(Name::parse("/data/c"), s);
    EXPECT_EQ(hit->content, orig->content);
    EXPECT_EQ(hit->signature, orig->signature);
  }
  EXPECT_EQ(cached, 10u);
  EXPECT_EQ(small.stats().cs_evictions, segs - 10);
}

// Counts interests in flight between the fetcher and the forwarder.
class CountingEndpoint : public Endpoint {
 public:
  explicit CountingEndpoint(Forwarder& fwd) : face_(AppFace::attach(fwd)) {}
  void send(Packet p) override {
    if (std::holds_alternative<Interest>(p)) max_in_flight = std::max(max_in_flight, ++in_flight);
    face_->send(std::move(p));
  }
  std::optional<Packet> receive(Clock::time_point deadline) override {
    auto p = face_->receive(deadline);
    if (p && std::holds_alternative<Data>(*p)) --in_flight;
    return p;
  }
  std::size_t in_flight = 0;
  std::size_t max_in_flight = 0;

 private:
  std::shared_ptr<AppFace> face_;
};

TEST_F(FetchTest, WindowBoundsOutstandingInterests) {
  auto payload = random_payload(1000 * 512, 13);
  producer->publish(Name::parse("/data/w"), payload, 512);
  CountingEndpoint ep(fwd);
  std::vector<std::uint8_t> got;
  std::size_t calls = 0;
  fetch_to(ep, Name::parse("/data/w"), options, [&](std::span<const std::uint8_t> c) {
    ++calls;
    got.insert(got.end(), c.begin(), c.end());
  });
  EXPECT_EQ(got, payload);
  EXPECT_EQ(calls, 1000u);
  EXPECT_EQ(ep.max_in_flight, kFetchWindow);
}

TEST_F(FetchTest, UnpublishedNameTimesOut) {
  options.timeout = 100ms;
  options.max_retries = 2;
  auto start = Clock::now();
  EXPECT_EQ(code_of([&] { fetch(fwd, Name::parse("/data/missing"), options); }), ErrorCode::kTimeout);
  EXPECT_GE(Clock::now() - start, 300ms);
}

TEST_F(FetchTest, UnroutedNameIsNoRoute) {
  EXPECT_EQ(code_of([&] { fetch(fwd, Name::parse("/elsewhere/x"), options); }), ErrorCode::kNoRoute);
}

TEST_F(FetchTest, WrongKeyIsSignatureInvalid) {
  producer->publish(Name::parse("/data/s"), random_payload(10000, 11));
  options.verifier = signer_from(99)->verifier();
  EXPECT_EQ(code_of([&] { fetch(fwd, Name::parse("/data/s"), options); }), ErrorCode::kSignatureInvalid);
}

TEST_F(FetchTest, OverLocalhostSocket) {
  auto payload = random_payload(2u << 20, 12);
  producer->publish(Name::parse("/data/net"), payload);
  SocketListener listener(fwd);
  ASSERT_NE(listener.port(), 0);
  {
    SocketClient a("127.0.0.1", listener.port());
    SocketClient b("127.0.0.1", listener.port());
    auto fa = std::async(std::launch::async, [&] { return fetch(a, Name::parse("/data/net"), options); });
    auto fb = std::async(std::launch::async, [&] { return fetch(b, Name::parse("/data/net"), options); });
    EXPECT_EQ(fa.get(), payload);
    EXPECT_EQ(fb.get(), payload);
  }
  EXPECT_EQ(producer->max_requests_per_name(), 1u);
}

}  // namespace
}  // namespace abbe::ndn
