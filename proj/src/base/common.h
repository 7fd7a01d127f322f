// src/base/common.h

// Copyright 2026  uncse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef UNCSE_BASE_COMMON_H_
#define UNCSE_BASE_COMMON_H_

#include <complex>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace uncse {

using Complex = std::complex<double>;

// T x F grids. Row t is one STFT frame, stored contiguously.
using RealGrid =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexGrid =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration, unknown keys, missing inputs. CLI exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Divergence or failed numeric self-checks. CLI exit code 2.
class NumericError : public Error {
 public:
  using Error::Error;
};

namespace internal {

class MessageLogger {
 public:
  explicit MessageLogger(const char *level) { stream_ << level << ": "; }
  ~MessageLogger() { std::cerr << stream_.str() << std::endl; }
  std::ostream &stream() { return stream_; }

 private:
  std::ostringstream stream_;
};

template <class E>
class ErrorThrower {
 public:
  ErrorThrower() = default;
  [[noreturn]] ~ErrorThrower() noexcept(false) { throw E(stream_.str()); }
  std::ostream &stream() { return stream_; }

 private:
  std::ostringstream stream_;
};

}  // namespace internal

#define UNCSE_LOG ::uncse::internal::MessageLogger("LOG").stream()
#define UNCSE_WARN ::uncse::internal::MessageLogger("WARNING").stream()
#define UNCSE_ERR \
  ::uncse::internal::ErrorThrower<std::invalid_argument>().stream()

// SplitMix64 step; used to derive independent stream seeds from one seed.
inline uint64_t MixSeed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
template <class Engine>
double UniformUnit(Engine &engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace uncse

#endif  // UNCSE_BASE_COMMON_H_
