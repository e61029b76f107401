// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "abbe/bench.hpp"
#include "abbe/content.hpp"
#include "abbe/errors.hpp"
#include "abbe/formats.hpp"
#include "abbe/ndn/endpoints.hpp"
#include "abbe/ndn/socket.hpp"

namespace abbe::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::uint16_t kDefaultPort = 6363;
constexpr const char* kTools[] = {"curvegen", "keygen", "encrypt", "decrypt", "put", "get", "bench"};

/// Bad invocation or unreadable/unwritable file.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::atomic<bool> g_stop{false};

extern "C" void on_stop_signal(int) { g_stop = true; }

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw UsageError("cannot read " + path);
  return ss.str();
}

/// Writes through a temporary sibling so readers never see a partial file.
void write_file(const std::string& path, std::string_view data) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write " + path);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw UsageError("cannot write " + path);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw UsageError("cannot write " + path);
  }
}

std::vector<std::uint8_t> seed_bytes(const std::string& seed) {
  bool hex = !seed.empty() && seed.size() % 2 == 0 &&
             seed.find_first_not_of("0123456789abcdefABCDEF") == std::string::npos;
  if (!hex) throw UsageError("--seed must be a non-empty, even-length hex string");
  return from_hex(seed);
}

Rng make_rng(const std::string& seed) { return seed.empty() ? Rng::from_os() : Rng(seed_bytes(seed)); }

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

 private:
  /// Reads and parses a file; errors raised while parsing name the file.
  template <class F>
  auto load(const std::string& path, F&& parse) {
    std::string text = read_file(path);
    where_ = path;
    auto v = parse(text);
    where_.clear();
    return v;
  }

 public:
  int curvegen(const std::string& out_path, const std::string& seed) {
    CurvePtr curve = seed.empty() ? default_curve() : generate_curve(128, seed_bytes(seed));
    write_file(out_path, formats::canonical(formats::curve_to_json(curve->params())) + "\n");
    return kOk;
  }

  int keygen(const std::string& config_path, const std::string& out_path, const std::string& split_path,
             const std::string& seed) {
    Rng rng = make_rng(seed);
    auto config = load(config_path, [](std::string_view t) { return formats::load_config(t); });
    formats::KeysFile keys = formats::generate_keys(config, rng);
    if (!split_path.empty()) {
      write_file(split_path, formats::save_msk(*keys.msk));
      keys.msk.reset();
    }
    write_file(out_path, formats::save_keys(keys));
    return kOk;
  }

  int encrypt(const std::string& config_path, const std::string& keys_path, const std::string& header_path,
              const std::string& file, const std::string& aes_path, const std::string& header_name,
              const std::string& seed) {
    Rng rng = make_rng(seed);
    auto config = load(config_path, [](std::string_view t) { return formats::load_config(t); });
    auto keys = load(keys_path, [](std::string_view t) { return formats::load_keys(t); });
    check_same_curve(config, keys, keys_path);
    auto [session, header] = encapsulate(keys.mpk, config.policy, rng);
    write_file(header_path, formats::save_header(formats::header_file_from(header)));
    if (!file.empty()) {
      std::string dest = aes_path.empty() ? file + ".aes" : aes_path;
      if (!fs::exists(file)) throw UsageError("cannot read " + file);
      content::encrypt_file(session, file, dest, header_name.empty() ? header_path : header_name, rng);
    }
    out_ << session.hex() << "\n";
    return kOk;
  }

  int decrypt(const std::string& config_path, const std::string& keys_path, const std::string& header_path,
              const std::string& user, const std::string& file, const std::string& out_path) {
    auto config = load(config_path, [](std::string_view t) { return formats::load_config(t); });
    auto keys = load(keys_path, [](std::string_view t) { return formats::load_keys(t); });
    check_same_curve(config, keys, keys_path);
    where_ = keys_path;
    formats::check_keys_match_config(keys, config);
    where_.clear();
    auto hf = load(header_path, [](std::string_view t) { return formats::load_header(t); });
    where_ = header_path;
    AbbeHeader header = formats::to_abbe_header(hf, *keys.mpk.curve);
    where_.clear();
    const UserPrivateKey* key = keys.find_key(user);
    if (key == nullptr) throw Error(ErrorCode::kUnknownUser, "no key for user '" + user + "' in " + keys_path);
    auto session = decapsulate(keys.mpk, *key, header);
    if (!session) {
      err_ << "user '" << user << "' is not an intended recipient of " << header_path << "\n";
      return kNotAuthorized;
    }
    if (!file.empty()) {
      if (!fs::exists(file)) throw UsageError("cannot read " + file);
      content::decrypt_file(*session, file, out_path);
    }
    out_ << session->hex() << "\n";
    return kOk;
  }

  int put(const std::string& name, const std::vector<std::string>& files, std::uint16_t port, std::size_t chunk_size,
          const std::string& seed, const std::string& key_out, double duration) {
    Rng rng = make_rng(seed);
    ndn::Name prefix = ndn::Name::parse(name);
    ndn::Forwarder fwd;
    auto signer = std::make_shared<ndn::Ed25519Signer>(rng);
    auto producer = ndn::Producer::attach(fwd, "abbe-put", signer);
    producer->register_prefix(prefix);
    for (const auto& f : files) {
      std::string data = read_file(f);
      ndn::Name object = files.size() == 1 ? prefix : ndn::Name::parse(name + "/" + fs::path(f).filename().string());
      std::uint64_t segs = producer->publish(object, std::vector<std::uint8_t>(data.begin(), data.end()), chunk_size);
      err_ << "published " << object.to_string() << " (" << data.size() << " bytes, " << segs << " segments)\n";
    }
    auto verifier = std::dynamic_pointer_cast<const ndn::Ed25519Verifier>(signer->verifier());
    std::string pub_hex = to_hex(verifier->public_key());
    if (!key_out.empty()) write_file(key_out, pub_hex + "\n");
    transport_ = true;
    ndn::SocketListener listener(fwd, port);
    out_ << "listening on 127.0.0.1:" << listener.port() << "\n" << "producer key " << pub_hex << "\n";
    out_.flush();

    g_stop = false;
    auto prev_int = std::signal(SIGINT, on_stop_signal);
    auto prev_term = std::signal(SIGTERM, on_stop_signal);
    auto until = duration > 0 ? std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                                        std::chrono::duration<double>(duration))
                              : std::chrono::steady_clock::time_point::max();
    while (!g_stop && std::chrono::steady_clock::now() < until)
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    std::signal(SIGINT, prev_int);
    std::signal(SIGTERM, prev_term);
    return kOk;
  }

  int get(const std::string& name, const std::string& out_path, const std::string& host, std::uint16_t port,
          std::string key_hex, const std::string& key_file, int timeout_ms, int retries) {
    if (!key_file.empty()) key_hex = read_file(key_file);
    while (!key_hex.empty() && std::isspace(static_cast<unsigned char>(key_hex.back()))) key_hex.pop_back();
    if (key_hex.size() != 64 || key_hex.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
      throw UsageError("producer key must be 64 hex characters");
    ndn::FetchOptions fo;
    fo.verifier = std::make_shared<ndn::Ed25519Verifier>(from_hex(key_hex));
    fo.timeout = std::chrono::milliseconds(timeout_ms);
    fo.max_retries = retries;
    transport_ = true;
    ndn::SocketClient client(host, port);
    std::string tmp = out_path + ".part";
    std::uint64_t bytes = 0;
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw UsageError("cannot write " + out_path);
      try {
        ndn::fetch_to(client, ndn::Name::parse(name), fo, [&](std::span<const std::uint8_t> c) {
          f.write(reinterpret_cast<const char*>(c.data()), static_cast<std::streamsize>(c.size()));
          bytes += c.size();
        });
      } catch (...) {
        f.close();
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
      }
      if (!f) throw UsageError("cannot write " + out_path);
    }
    std::error_code ec;
    fs::rename(tmp, out_path, ec);
    if (ec) throw UsageError("cannot write " + out_path);
    err_ << "fetched " << name << " (" << bytes << " bytes)\n";
    return kOk;
  }

  int bench(int experiment, const std::string& out_path, bool paper_scale, const std::string& seed,
            const std::string& markdown_path, int reps) {
    Rng rng = make_rng(seed);
    bench::RunOptions opt{reps, &err_};
    std::vector<bench::BenchmarkRecord> records;
    switch (experiment) {
      case 1: records = bench::experiment1(bench::table1_user_counts(), 3, 50, rng, opt); break;
      case 2: records = bench::experiment2(bench::table2_attribute_counts(), rng, opt); break;
      case 3:
        records = bench::experiment3(bench::download_user_counts(), bench::download_file_sizes_mib(paper_scale), rng, opt);
        break;
      default:
        records = bench::experiment4(bench::download_user_counts(), bench::download_file_sizes_mib(paper_scale), rng, opt);
        break;
    }
    write_file(out_path, bench::to_csv(records, bench::host_info()));
    std::string md = bench::to_markdown(records);
    if (!markdown_path.empty()) write_file(markdown_path, md);
    out_ << md;
    return kOk;
  }

  /// Maps a library error to an exit status and prints the diagnostic.
  int fail(const Error& e, const std::string& tool) {
    err_ << "abbe " << tool << ": " << (where_.empty() ? "" : where_ + ": ") << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kNotAuthorized: return kNotAuthorized;
      case ErrorCode::kNoRoute:
      case ErrorCode::kTimeout:
      case ErrorCode::kSignatureInvalid: return kTransport;
      case ErrorCode::kIo: return transport_ ? kTransport : kUsage;
      default: return kInvalid;
    }
  }

  int fail(const UsageError& e, const std::string& tool) {
    err_ << "abbe " << tool << ": " << e.what() << "\n";
    return kUsage;
  }

 private:
  void check_same_curve(const formats::ConfigFile& config, const formats::KeysFile& keys, const std::string& keys_path) {
    if (keys.mpk.curve->params().p != config.curve.p || keys.mpk.curve->params().r != config.curve.r) {
      where_ = keys_path;
      throw Error(ErrorCode::kMismatchedCurve, "keys belong to a different curve than the configuration");
    }
  }

  std::ostream& out_;
  std::ostream& err_;
  std::string where_;
  bool transport_ = false;
};

}  // namespace

int run(const std::vector<std::string>& argv, [[maybe_unused]] std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  if (!argv.empty()) {
    std::string base = fs::path(argv[0]).filename().string();
    for (const char* t : kTools)
      if (base == std::string("abbe-") + t) args.insert(args.begin(), t);
  }

  CLI::App app{"Attribute-based broadcast encryption over named data", "abbe"};
  app.require_subcommand(1);

  std::string seed, config, keys, out_path, split, header, file, aes, header_name, user, name, host = "127.0.0.1";
  std::string key_out, key_hex, key_file, markdown;
  std::vector<std::string> files;
  std::uint16_t port = kDefaultPort;
  std::size_t chunk = ndn::kDefaultChunkSize;
  double duration = 0;
  int timeout_ms = 2000, retries = 3, experiment = 0, reps = 3;
  bool paper_scale = false;

  auto* curvegen = app.add_subcommand("curvegen", "Write a 128-bit BN curve description");
  curvegen->add_option("--out", out_path, "Output curve JSON")->required();
  curvegen->add_option("--seed", seed, "Hex seed for the parameter search");

  auto* keygen = app.add_subcommand("keygen", "Generate master and user keys from a configuration");
  keygen->add_option("-c,--config", config, "Configuration JSON")->required();
  keygen->add_option("-o,--out", out_path, "Keys JSON")->required();
  keygen->add_option("--split", split, "Write the master secret key to this file instead");
  keygen->add_option("--seed", seed, "Hex seed");

  auto* encrypt = app.add_subcommand("encrypt", "Wrap a fresh session key under the configured policy");
  encrypt->add_option("-c,--config", config, "Configuration JSON")->required();
  encrypt->add_option("-k,--keys", keys, "Keys JSON")->required();
  encrypt->add_option("-o,--out", out_path, "Header JSON")->required();
  encrypt->add_option("--file", file, "Also encrypt this file");
  encrypt->add_option("--aes", aes, "Encrypted file path (default <file>.aes)");
  encrypt->add_option("--header-name", header_name, "Header name recorded in the encrypted file");
  encrypt->add_option("--seed", seed, "Hex seed");

  auto* decrypt = app.add_subcommand("decrypt", "Recover the session key for a user");
  decrypt->add_option("-c,--config", config, "Configuration JSON")->required();
  decrypt->add_option("-k,--keys", keys, "Keys JSON")->required();
  decrypt->add_option("-H,--header", header, "Header JSON")->required();
  decrypt->add_option("-u,--user", user, "User id")->required();
  auto* dfile = decrypt->add_option("--file", file, "Encrypted file to decrypt");
  decrypt->add_option("--out", out_path, "Plaintext output")->needs(dfile);
  dfile->needs(decrypt->get_option("--out"));

  auto* put = app.add_subcommand("put", "Publish files through a local forwarder");
  put->add_option("name", name, "Name prefix")->required();
  put->add_option("files", files, "Files to publish")->required();
  put->add_option("--port", port, "TCP port (0 picks one)");
  put->add_option("--chunk-size", chunk, "Segment size in bytes")->check(CLI::Range(std::size_t{1}, ndn::kMaxChunkSize));
  put->add_option("--seed", seed, "Hex seed for the signing key");
  put->add_option("--key-out", key_out, "Write the producer public key here");
  put->add_option("--duration", duration, "Serve for this many seconds (default: until interrupted)");

  auto* get = app.add_subcommand("get", "Fetch a named object from a forwarder");
  get->add_option("name", name, "Object name")->required();
  get->add_option("-o,--out", out_path, "Output file")->required();
  get->add_option("--host", host, "Forwarder host");
  get->add_option("--port", port, "Forwarder port");
  auto* kh = get->add_option("--producer-key", key_hex, "Producer public key (hex)");
  auto* kf = get->add_option("--producer-key-file", key_file, "File holding the producer public key");
  kh->excludes(kf);
  get->add_option("--timeout", timeout_ms, "Per-interest timeout in ms")->check(CLI::PositiveNumber);
  get->add_option("--retries", retries, "Retransmissions per segment")->check(CLI::NonNegativeNumber);

  auto* bench = app.add_subcommand("bench", "Run one of the four benchmark experiments");
  bench->add_option("--experiment", experiment, "Experiment number")->required()->check(CLI::Range(1, 4));
  bench->add_option("--out", out_path, "CSV report")->required();
  bench->add_flag("--paper-scale", paper_scale, "Use 50/100/500 MiB files");
  bench->add_option("--seed", seed, "Hex seed");
  bench->add_option("--markdown", markdown, "Also write the Markdown table here");
  bench->add_option("--reps", reps, "Repetitions per point")->check(CLI::PositiveNumber);

  std::vector<const char*> cargv{"abbe"};
  for (const auto& a : args) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Runner r(out, err);
  std::string tool = app.get_subcommands().front()->get_name();
  try {
    if (curvegen->parsed()) return r.curvegen(out_path, seed);
    if (keygen->parsed()) return r.keygen(config, out_path, split, seed);
    if (encrypt->parsed()) return r.encrypt(config, keys, out_path, file, aes, header_name, seed);
    if (decrypt->parsed()) return r.decrypt(config, keys, header, user, file, out_path);
    if (put->parsed()) return r.put(name, files, port, chunk, seed, key_out, duration);
    if (get->parsed()) {
      if (key_hex.empty() && key_file.empty()) throw UsageError("--producer-key or --producer-key-file is required");
      return r.get(name, out_path, host, port, key_hex, key_file, timeout_ms, retries);
    }
    return r.bench(experiment, out_path, paper_scale, seed, markdown, reps);
  } catch (const UsageError& e) {
    return r.fail(e, tool);
  } catch (const Error& e) {
    return r.fail(e, tool);
  }
}

}  // namespace abbe::cli
