// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace abbe {

enum class ErrorCode {
  kUnsupportedSecurityLevel,
  kWrongGroup,
  kDecode,
  kDuplicateUser,
  kUnknownAttribute,
  kUnknownUser,
  kUnknownRevokedUser,
  kMismatchedCurve,
  kInvalidArgument,
  kSchemaViolation,
  kAuthFailure,
  kNoRoute,
  kTimeout,
  kSignatureInvalid,
  kPrefixNotRegistered,
  kNotAuthorized,
  kIo,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Schema violation carrying the JSON path (RFC 6901 pointer) of the first
/// offending field.
class SchemaViolation : public Error {
 public:
  SchemaViolation(std::string path, const std::string& reason)
      : Error(ErrorCode::kSchemaViolation, path + ": " + reason), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace abbe
