// Copyright 2026 The qnn-lens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qnn_lens {

enum class ErrorCode {
    InvalidArgument,
    NotFound,
    Schema,
    Io,
    Internal,
};

/// Every failure raised by the core carries one of the codes above so the
/// C API and the HTTP layer can map it without string matching.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

class InvalidArgument : public Error {
  public:
    explicit InvalidArgument(const std::string &message) : Error(ErrorCode::InvalidArgument, message) {}
};

class NotFound : public Error {
  public:
    explicit NotFound(const std::string &message) : Error(ErrorCode::NotFound, message) {}
};

class SchemaError : public Error {
  public:
    explicit SchemaError(const std::string &message) : Error(ErrorCode::Schema, message) {}
};

class IoError : public Error {
  public:
    explicit IoError(const std::string &message) : Error(ErrorCode::Io, message) {}
};

}  // namespace qnn_lens
