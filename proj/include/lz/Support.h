// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#ifndef LZ_SUPPORT_H
#define LZ_SUPPORT_H

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace lz {

using BigInt = boost::multiprecision::cpp_int;

/// Either a value or an error. Minimal stand-in for std::expected, which is
/// not available in the C++20 toolchains we target.
template <typename T, typename E>
class Expected {
public:
  Expected(T value) : storage_(std::in_place_index<0>, std::move(value)) {}
  static Expected failure(E error) {
    return Expected(std::in_place_index<1>, std::move(error));
  }

  bool ok() const { return storage_.index() == 0; }
  explicit operator bool() const { return ok(); }

  T &value() & {
    assert(ok());
    return std::get<0>(storage_);
  }
  const T &value() const & {
    assert(ok());
    return std::get<0>(storage_);
  }
  T &&value() && {
    assert(ok());
    return std::get<0>(std::move(storage_));
  }
  T *operator->() { return &value(); }
  const T *operator->() const { return &value(); }
  T &operator*() & { return value(); }
  const T &operator*() const & { return value(); }

  E &error() & {
    assert(!ok());
    return std::get<1>(storage_);
  }
  const E &error() const & {
    assert(!ok());
    return std::get<1>(storage_);
  }

private:
  template <std::size_t I, typename U>
  Expected(std::in_place_index_t<I> tag, U &&u)
      : storage_(tag, std::forward<U>(u)) {}

  std::variant<T, E> storage_;
};

/// Success or an error message. Used by in-place IR mutators.
class Status {
public:
  static Status success() { return Status(); }
  static Status failure(std::string message) {
    Status s;
    s.failed_ = true;
    s.message_ = std::move(message);
    return s;
  }
  bool ok() const { return !failed_; }
  explicit operator bool() const { return ok(); }
  const std::string &message() const { return message_; }

private:
  bool failed_ = false;
  std::string message_;
};

//===----------------------------------------------------------------------===//
// Hashing
//===----------------------------------------------------------------------===//

inline constexpr uint64_t kFnvOffset = 1469598103934665603ull;
inline constexpr uint64_t kFnvPrime = 1099511628211ull;

struct Fnv1a {
  uint64_t state = kFnvOffset;

  void addByte(uint8_t b) {
    state ^= b;
    state *= kFnvPrime;
  }
  void addBytes(std::string_view bytes) {
    for (char c : bytes)
      addByte(static_cast<uint8_t>(c));
  }
  void addU64(uint64_t v) {
    for (int i = 0; i < 8; ++i)
      addByte(static_cast<uint8_t>(v >> (8 * i)));
  }
};

inline std::string bigToString(const BigInt &v) { return v.str(); }

} // namespace lz

#endif // LZ_SUPPORT_H
