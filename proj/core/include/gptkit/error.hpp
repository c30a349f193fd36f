// Copyright 2026 The gptkit Authors
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

#include <stdexcept>
#include <string>

namespace gptkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad labels, non-covering tests, invalid weights.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class EmptyStateSpace : public Error {
 public:
  EmptyStateSpace() : Error("state space is empty") {}
};

class StabilizerMismatch : public Error {
 public:
  using Error::Error;
};

// A desk-scale guard refused the input. Carries the limit that was hit.
class SizeGuardExceeded : public Error {
 public:
  SizeGuardExceeded(const std::string& what, std::size_t size, std::size_t limit)
      : Error(what + ": size " + std::to_string(size) + " exceeds limit " +
              std::to_string(limit)),
        size_(size),
        limit_(limit) {}
  std::size_t size() const { return size_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t size_;
  std::size_t limit_;
};

class InconsistentUnit : public Error {
 public:
  using Error::Error;
};

class Singular : public Error {
 public:
  Singular() : Error("matrix is singular") {}
};

class SignalingState : public Error {
 public:
  using Error::Error;
};

class EffectOutOfRange : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedSize : public Error {
 public:
  using Error::Error;
};

class NotInterior : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace gptkit
