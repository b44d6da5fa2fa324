// Copyright 2026 The toricq Authors
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

#ifndef TORICQ_ERROR_HPP
#define TORICQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace toricq {

// Every failure raised by the library carries one of these codes. The C API
// forwards them unchanged as integer status values (see toricq.h).
enum class ErrorCode : int {
    InvalidArgument = 1,
    InvalidDistance = 2,
    InvalidProbability = 3,
    InvalidChainLength = 4,
    NonEmptySyndrome = 5,
    EmptySyndrome = 6,
    TooManyDefects = 7,
    OddDefectCount = 8,
    UnsupportedDistance = 9,
    UnsupportedInput = 10,
    ShapeMismatch = 11,
    MissingCache = 12,
    VersionMismatch = 13,
    CorruptFile = 14,
    BufferTooSmall = 15,
    IndexOutOfRange = 16,
    ConfigInvalid = 17,
    ArchitectureMismatch = 18,
    CheckpointIncompatible = 19,
    OutOfRange = 20,
    Io = 21,
};

const char *error_code_name(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
    }
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace toricq

#endif
