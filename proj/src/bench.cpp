// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/bench.hpp"

#include <sys/utsname.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <latch>
#include <random>
#include <sstream>
#include <thread>

#include "abbe/content.hpp"
#include "abbe/errors.hpp"
#include "abbe/formats.hpp"
#include "abbe/hash.hpp"
#include "abbe/ndn/endpoints.hpp"

namespace abbe::bench {
namespace {

using Seconds = std::chrono::duration<double>;
constexpr std::uint64_t kMiB = std::uint64_t{1} << 20;
constexpr std::string_view kCsvHeader = "experiment,users,attributes,file_mib,per_user_seconds,worst_seconds";
const char* const kHeaderName = "/headers/header.json";

void check_counts(const std::vector<std::uint64_t>& counts, const char* what) {
  if (counts.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " list is empty");
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be positive");
    if (i > 0 && counts[i] <= counts[i - 1])
      throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be strictly ascending");
  }
}

void check_options(const RunOptions& options) {
  if (options.repetitions < 1) throw Error(ErrorCode::kInvalidArgument, "repetitions must be positive");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

/// Per-index median over repetitions.
std::vector<double> median_per_user(const std::vector<std::vector<double>>& runs) {
  std::vector<double> out(runs.front().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<double> column;
    for (const auto& r : runs) column.push_back(r[i]);
    out[i] = median(std::move(column));
  }
  return out;
}

BenchmarkRecord make_record(int experiment, std::map<std::string, std::uint64_t> params, std::vector<double> times) {
  BenchmarkRecord r;
  r.experiment = experiment;
  r.params = std::move(params);
  r.per_user_seconds = std::move(times);
  r.worst_seconds = *std::max_element(r.per_user_seconds.begin(), r.per_user_seconds.end());
  return r;
}

void log_record(const RunOptions& options, const BenchmarkRecord& r) {
  if (options.log == nullptr) return;
  *options.log << "experiment " << r.experiment;
  for (const auto& [k, v] : r.params) *options.log << ' ' << k << '=' << v;
  *options.log << " worst=" << r.worst_seconds << "s\n";
  options.log->flush();
}

std::vector<std::string> pool_of(std::uint64_t n) {
  std::vector<std::string> pool;
  for (std::uint64_t i = 0; i < n; ++i) pool.push_back("attr" + std::to_string(i));
  return pool;
}

/// The key generation tool as run on a configuration file.
double time_keygen_tool(const std::string& config_text, Rng& rng) {
  auto t0 = std::chrono::steady_clock::now();
  formats::ConfigFile config = formats::load_config(config_text);
  std::string out = formats::save_keys(formats::generate_keys(config, rng));
  auto t1 = std::chrono::steady_clock::now();
  if (out.empty()) throw Error(ErrorCode::kIo, "key generation produced no output");
  return Seconds(t1 - t0).count();
}

/// Median keygen time per configuration. Each repetition sweeps every
/// configuration once, so a slow spell on the host lands on one sample of
/// several points instead of all samples of one point.
std::vector<double> time_configs(const std::vector<formats::ConfigFile>& configs, Rng& rng, int repetitions) {
  std::vector<std::string> texts;
  for (const auto& c : configs) texts.push_back(formats::save_config(c));
  std::vector<std::vector<double>> runs(configs.size());
  for (int rep = 0; rep < repetitions; ++rep) {
    for (std::size_t i = 0; i < texts.size(); ++i) {
      Rng r = rng.fork();
      runs[i].push_back(time_keygen_tool(texts[i], r));
    }
  }
  std::vector<double> out;
  for (auto& r : runs) out.push_back(median(std::move(r)));
  return out;
}

std::vector<std::uint8_t> fixture(std::uint64_t size, std::uint64_t seed) {
  std::vector<std::uint8_t> out(size);
  std::mt19937_64 gen(seed);
  for (std::size_t i = 0; i < out.size(); i += 8) {
    std::uint64_t w = gen();
    for (std::size_t j = 0; j < 8 && i + j < out.size(); ++j) out[i + j] = static_cast<std::uint8_t>(w >> (8 * j));
  }
  return out;
}

/// Runs `work` on one thread per user, each with its own face, released
/// together. Returns each user's wall-clock seconds.
std::vector<double> run_users(ndn::Forwarder& fwd, std::uint64_t users,
                              const std::function<void(ndn::Endpoint&, std::uint64_t)>& work) {
  std::vector<double> seconds(users);
  std::vector<std::exception_ptr> errors(users);
  std::vector<std::shared_ptr<ndn::AppFace>> faces;
  for (std::uint64_t u = 0; u < users; ++u) faces.push_back(ndn::AppFace::attach(fwd));
  std::latch start(static_cast<std::ptrdiff_t>(users));
  std::vector<std::thread> threads;
  for (std::uint64_t u = 0; u < users; ++u) {
    threads.emplace_back([&, u] {
      start.arrive_and_wait();
      auto t0 = std::chrono::steady_clock::now();
      try {
        work(*faces[u], u);
      } catch (...) {
        errors[u] = std::current_exception();
      }
      seconds[u] = Seconds(std::chrono::steady_clock::now() - t0).count();
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return seconds;
}

void expect_digest(const Digest256& got, const Digest256& want, const ndn::Name& name) {
  if (got != want) throw Error(ErrorCode::kDecode, "download of " + name.to_string() + " differs from the published file");
}

struct Publisher {
  ndn::Forwarder fwd;
  std::shared_ptr<ndn::Producer> producer;

  explicit Publisher(Rng& rng) {
    producer = ndn::Producer::attach(fwd, "producer", std::make_shared<ndn::Ed25519Signer>(rng));
    producer->register_prefix(ndn::Name::parse("/data"));
    producer->register_prefix(ndn::Name::parse("/headers"));
  }

  ndn::FetchOptions fetch_options() const {
    ndn::FetchOptions fo;
    fo.verifier = producer->verifier();
    return fo;
  }
};

/// Shared driver for the download experiments: `work` runs once per user
/// and repetition against a cold cache.
std::vector<BenchmarkRecord> download_runs(int experiment, Publisher& pub, std::uint64_t size_mib,
                                           const std::vector<std::uint64_t>& user_counts, std::uint64_t segments,
                                           const RunOptions& options,
                                           const std::function<void(ndn::Endpoint&, std::uint64_t)>& work) {
  std::vector<BenchmarkRecord> out;
  for (std::uint64_t users : user_counts) {
    std::vector<std::vector<double>> runs;
    std::uint64_t producer_interests = 0;
    for (int rep = 0; rep < options.repetitions; ++rep) {
      pub.fwd.clear_cache();
      pub.producer->reset_counters();
      runs.push_back(run_users(pub.fwd, users, work));
      producer_interests = std::max(producer_interests, pub.producer->interests_received());
    }
    auto r = make_record(experiment, {{"users", users}, {"file_mib", size_mib}}, median_per_user(runs));
    r.counters["segments"] = segments;
    r.counters["producer_interests"] = producer_interests;
    log_record(options, r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string file_name(std::uint64_t size_mib, const char* suffix) {
  return "/data/file" + std::to_string(size_mib) + "M" + suffix;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorCode::kDecode, "bad number '" + std::string(s) + "'");
  return v;
}

std::uint64_t parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorCode::kDecode, "bad integer '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

const std::vector<std::string> kParamColumns = {"users", "attributes", "file_mib"};

}  // namespace

std::vector<BenchmarkRecord> experiment1(const std::vector<std::uint64_t>& user_counts, std::uint64_t attrs_per_user,
                                         std::uint64_t pool_size, Rng& rng, const RunOptions& options) {
  check_counts(user_counts, "user counts");
  check_options(options);
  if (attrs_per_user == 0 || attrs_per_user > pool_size)
    throw Error(ErrorCode::kInvalidArgument, "attributes per user must be in [1, pool size]");
  const auto pool = pool_of(pool_size);
  std::vector<formats::ConfigFile> configs;
  for (std::uint64_t users : user_counts) {
    formats::ConfigFile config;
    config.curve = default_curve()->params();
    config.attribute_pool = pool;
    for (std::uint64_t u = 0; u < users; ++u) {
      auto order = pool;
      // Partial Fisher-Yates: the first attrs_per_user entries are the sample.
      for (std::uint64_t i = 0; i < attrs_per_user; ++i)
        std::swap(order[i], order[i + rng.uniform(pool_size - i)]);
      config.users.push_back({"user" + std::to_string(u), AttributeSet(order.begin(), order.begin() + attrs_per_user)});
    }
    config.policy.required_attributes = config.users.front().attributes;
    configs.push_back(std::move(config));
  }
  auto times = time_configs(configs, rng, options.repetitions);
  std::vector<BenchmarkRecord> out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    auto r = make_record(1, {{"users", user_counts[i]}, {"attributes", attrs_per_user}}, {times[i]});
    log_record(options, r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BenchmarkRecord> experiment2(const std::vector<std::uint64_t>& attr_counts, Rng& rng,
                                         const RunOptions& options) {
  check_counts(attr_counts, "attribute counts");
  check_options(options);
  std::vector<formats::ConfigFile> configs;
  for (std::uint64_t n : attr_counts) {
    formats::ConfigFile config;
    config.curve = default_curve()->params();
    config.attribute_pool = pool_of(n);
    config.users.push_back({"user0", AttributeSet(config.attribute_pool.begin(), config.attribute_pool.end())});
    config.policy.required_attributes = config.users.front().attributes;
    configs.push_back(std::move(config));
  }
  auto times = time_configs(configs, rng, options.repetitions);
  std::vector<BenchmarkRecord> out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    auto r = make_record(2, {{"users", 1}, {"attributes", attr_counts[i]}}, {times[i]});
    log_record(options, r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BenchmarkRecord> experiment3(const std::vector<std::uint64_t>& user_counts,
                                         const std::vector<std::uint64_t>& file_sizes_mib, Rng& rng,
                                         const RunOptions& options) {
  check_counts(user_counts, "user counts");
  check_counts(file_sizes_mib, "file sizes");
  check_options(options);
  std::vector<BenchmarkRecord> out;
  for (std::uint64_t size_mib : file_sizes_mib) {
    Publisher pub(rng);
    auto payload = fixture(size_mib * kMiB, rng.next_u64());
    const Digest256 want = sha256(payload);
    const auto name = ndn::Name::parse(file_name(size_mib, ""));
    const std::uint64_t segments = pub.producer->publish(name, std::move(payload));
    const auto fo = pub.fetch_options();
    auto records = download_runs(3, pub, size_mib, user_counts, segments, options, [&](ndn::Endpoint& ep, std::uint64_t) {
      Sha256 h;
      ndn::fetch_to(ep, name, fo, [&](std::span<const std::uint8_t> c) { h.update(c); });
      expect_digest(h.finish(), want, name);
    });
    out.insert(out.end(), records.begin(), records.end());
  }
  return out;
}

std::vector<BenchmarkRecord> experiment4(const std::vector<std::uint64_t>& user_counts,
                                         const std::vector<std::uint64_t>& file_sizes_mib, Rng& rng,
                                         const RunOptions& options) {
  check_counts(user_counts, "user counts");
  check_counts(file_sizes_mib, "file sizes");
  check_options(options);

  CurvePtr curve = default_curve();
  AttributeUniverse universe{{"member", "reader", "staff"}};
  std::vector<UserRecord> registry;
  for (std::uint64_t u = 0; u < user_counts.back(); ++u)
    registry.push_back({"user" + std::to_string(u), {"member", "reader"}});
  auto [mpk, msk] = setup(curve, universe, registry, rng);
  std::vector<UserPrivateKey> keys;
  for (const auto& u : registry) keys.push_back(keygen(msk, u));
  const AccessPolicy policy{{"member", "reader"}, {}};

  std::vector<BenchmarkRecord> out;
  for (std::uint64_t size_mib : file_sizes_mib) {
    Publisher pub(rng);
    auto [session, header] = encapsulate(mpk, policy, rng);
    std::string header_text = formats::save_header(formats::header_file_from(header));
    const auto header_name = ndn::Name::parse(kHeaderName);
    const std::uint64_t header_segments =
        pub.producer->publish(header_name, std::vector<std::uint8_t>(header_text.begin(), header_text.end()));

    Digest256 want;
    std::vector<std::uint8_t> wire;
    {
      auto plaintext = fixture(size_mib * kMiB, rng.next_u64());
      want = sha256(plaintext);
      wire = content::serialize(content::encrypt_object(session, plaintext, kHeaderName, rng));
    }
    const auto name = ndn::Name::parse(file_name(size_mib, ".aes"));
    const std::uint64_t segments = header_segments + pub.producer->publish(name, std::move(wire));
    const auto fo = pub.fetch_options();

    auto records = download_runs(4, pub, size_mib, user_counts, segments, options, [&](ndn::Endpoint& ep, std::uint64_t u) {
      const UserPrivateKey& key = keys[u];
      auto raw = ndn::fetch(ep, header_name, fo);
      auto hf = formats::load_header(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
      auto sk = decapsulate(mpk, key, formats::to_abbe_header(hf, *curve));
      if (!sk) throw Error(ErrorCode::kNotAuthorized, key.user_id + " is not a recipient of " + kHeaderName);
      Sha256 h;
      content::StreamDecryptor dec(*sk, [&](std::span<const std::uint8_t> p) { h.update(p); });
      ndn::fetch_to(ep, name, fo, [&](std::span<const std::uint8_t> c) { dec.feed(c); });
      dec.finish();
      expect_digest(h.finish(), want, name);
    });
    for (auto& r : records) r.counters["header_bytes"] = header_text.size();
    out.insert(out.end(), records.begin(), records.end());
  }
  return out;
}

std::vector<std::uint64_t> table1_user_counts() {
  std::vector<std::uint64_t> v = {1, 2, 5, 10, 20, 30, 40, 50, 100};
  for (std::uint64_t n = 150; n <= 1000; n += 50) v.push_back(n);
  return v;
}

std::vector<std::uint64_t> table2_attribute_counts() {
  std::vector<std::uint64_t> v = {2, 5, 10, 20, 30, 40, 50, 100};
  for (std::uint64_t n = 150; n <= 1000; n += 50) v.push_back(n);
  return v;
}

std::vector<std::uint64_t> download_user_counts() { return {1, 2, 5, 10}; }

std::vector<std::uint64_t> download_file_sizes_mib(bool paper_scale) {
  if (paper_scale) return {50, 100, 500};
  return {5, 10, 50};
}

HostInfo host_info() {
  HostInfo h;
  char name[256] = {};
  if (gethostname(name, sizeof name - 1) == 0) h.hostname = name;
  utsname u{};
  if (uname(&u) == 0) h.system = std::string(u.sysname) + " " + u.release + " " + u.machine;
  std::ifstream cpuinfo("/proc/cpuinfo");
  for (std::string line; std::getline(cpuinfo, line);) {
    if (line.rfind("model name", 0) == 0) {
      auto colon = line.find(':');
      if (colon != std::string::npos) h.cpu = line.substr(line.find_first_not_of(' ', colon + 1));
      break;
    }
  }
  h.cores = std::thread::hardware_concurrency();
#if defined(__clang__)
  h.compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
  h.compiler = "gcc " __VERSION__;
#else
  h.compiler = "unknown";
#endif
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char ts[32];
  std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", &tm);
  h.timestamp = ts;
  return h;
}

std::string to_csv(const std::vector<BenchmarkRecord>& records, const HostInfo& host) {
  std::ostringstream out;
  out << "# host: " << one_line(host.hostname) << '\n'
      << "# system: " << one_line(host.system) << '\n'
      << "# cpu: " << one_line(host.cpu) << '\n'
      << "# cores: " << host.cores << '\n'
      << "# compiler: " << one_line(host.compiler) << '\n'
      << "# timestamp: " << one_line(host.timestamp) << '\n'
      << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.experiment;
    for (const auto& col : kParamColumns) {
      out << ',';
      if (auto it = r.params.find(col); it != r.params.end()) out << it->second;
    }
    out << ',';
    for (std::size_t i = 0; i < r.per_user_seconds.size(); ++i)
      out << (i ? ";" : "") << format_double(r.per_user_seconds[i]);
    out << ',' << format_double(r.worst_seconds) << '\n';
  }
  return out.str();
}

std::vector<BenchmarkRecord> parse_csv(std::string_view text) {
  std::vector<BenchmarkRecord> out;
  bool header_seen = false;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw Error(ErrorCode::kDecode, "unexpected report header");
      header_seen = true;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != 6) throw Error(ErrorCode::kDecode, "report row has " + std::to_string(fields.size()) + " fields");
    BenchmarkRecord r;
    r.experiment = static_cast<int>(parse_uint(fields[0]));
    for (std::size_t i = 0; i < kParamColumns.size(); ++i)
      if (!fields[1 + i].empty()) r.params[kParamColumns[i]] = parse_uint(fields[1 + i]);
    if (!fields[4].empty())
      for (auto t : split(fields[4], ';')) r.per_user_seconds.push_back(parse_double(t));
    r.worst_seconds = parse_double(fields[5]);
    out.push_back(std::move(r));
  }
  if (!header_seen) throw Error(ErrorCode::kDecode, "report has no header");
  return out;
}

std::string to_markdown(const std::vector<BenchmarkRecord>& records) {
  auto fixed = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "| experiment | users | attributes | file (MiB) | per-user time (s) | worst time (s) |\n"
      << "|---|---|---|---|---|---|\n";
  for (const auto& r : records) {
    out << "| " << r.experiment;
    for (const auto& col : kParamColumns) {
      out << " | ";
      if (auto it = r.params.find(col); it != r.params.end()) out << it->second;
    }
    out << " | ";
    for (std::size_t i = 0; i < r.per_user_seconds.size(); ++i) out << (i ? " " : "") << fixed(r.per_user_seconds[i]);
    out << " | " << fixed(r.worst_seconds) << " |\n";
  }
  return out.str();
}

bool monotone_within(const std::vector<BenchmarkRecord>& records, double tolerance) {
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].worst_seconds < records[i - 1].worst_seconds * (1 - tolerance)) return false;
  return true;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::kInvalidArgument, "fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw Error(ErrorCode::kInvalidArgument, "fit needs distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
  }
  f.r_squared = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
  return f;
}

}  // namespace abbe::bench
