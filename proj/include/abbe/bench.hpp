// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Benchmark harness for key generation and named-data transfer.

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "abbe/rng.hpp"

namespace abbe::bench {

struct BenchmarkRecord {
  int experiment = 0;
  /// Any of "users", "attributes", "file_mib".
  std::map<std::string, std::uint64_t> params;
  std::vector<double> per_user_seconds;
  double worst_seconds = 0;
  /// Instrumentation that is not part of the report.
  std::map<std::string, std::uint64_t> counters;

  bool operator==(const BenchmarkRecord& o) const {
    return experiment == o.experiment && params == o.params && per_user_seconds == o.per_user_seconds &&
           worst_seconds == o.worst_seconds;
  }
};

struct RunOptions {
  int repetitions = 3;
  /// Progress lines go here when set.
  std::ostream* log = nullptr;
};

/// Times the key generation tool (parse configuration, setup, keygen,
/// serialize) for configurations of `user_counts` users, each holding
/// `attrs_per_user` attributes drawn from a pool of `pool_size`.
std::vector<BenchmarkRecord> experiment1(const std::vector<std::uint64_t>& user_counts, std::uint64_t attrs_per_user,
                                         std::uint64_t pool_size, Rng& rng, const RunOptions& options = {});

/// As experiment1 with one user holding every attribute of a pool of the
/// given size.
std::vector<BenchmarkRecord> experiment2(const std::vector<std::uint64_t>& attr_counts, Rng& rng,
                                         const RunOptions& options = {});

/// Concurrent plaintext downloads: one consumer thread per user, each
/// fetching the whole file through a shared forwarder and hashing it.
/// Throws if any download does not hash-equal the published file.
std::vector<BenchmarkRecord> experiment3(const std::vector<std::uint64_t>& user_counts,
                                         const std::vector<std::uint64_t>& file_sizes_mib, Rng& rng,
                                         const RunOptions& options = {});

/// As experiment3 for encrypted files: each user fetches the header,
/// decapsulates, then fetches and decrypts the file.
std::vector<BenchmarkRecord> experiment4(const std::vector<std::uint64_t>& user_counts,
                                         const std::vector<std::uint64_t>& file_sizes_mib, Rng& rng,
                                         const RunOptions& options = {});

std::vector<std::uint64_t> table1_user_counts();
std::vector<std::uint64_t> table2_attribute_counts();
std::vector<std::uint64_t> download_user_counts();
std::vector<std::uint64_t> download_file_sizes_mib(bool paper_scale);

struct HostInfo {
  std::string hostname;
  std::string system;
  std::string cpu;
  unsigned cores = 0;
  std::string compiler;
  std::string timestamp;
};

HostInfo host_info();

std::string to_csv(const std::vector<BenchmarkRecord>& records, const HostInfo& host);
/// Reads back a report written by to_csv; comment lines are skipped.
std::vector<BenchmarkRecord> parse_csv(std::string_view text);
std::string to_markdown(const std::vector<BenchmarkRecord>& records);

/// Each time is at least the previous one minus `tolerance` of it.
bool monotone_within(const std::vector<BenchmarkRecord>& records, double tolerance);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace abbe::bench
