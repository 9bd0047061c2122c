// Copyright 2026 The DCT Mask Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dctmask {

// Bad shapes, out-of-range sizes, non-finite samples.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed serialized input. `offset` is the byte position where decoding
// stopped, or npos when the position is not meaningful.
class ParseError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit ParseError(const std::string& what, std::size_t offset = npos)
      : std::runtime_error(offset == npos
                               ? what
                               : what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Well-formed input whose records do not reference each other consistently.
class IntegrityError : public std::runtime_error {
 public:
  IntegrityError(const std::string& what, std::int64_t id)
      : std::runtime_error(what + " (id " + std::to_string(id) + ")"), id_(id) {}

  std::int64_t id() const noexcept { return id_; }

 private:
  std::int64_t id_;
};

}  // namespace dctmask
