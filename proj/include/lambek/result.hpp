#pragma once

#include <cassert>
#include <utility>
#include <variant>

namespace lambek {

// Lightweight success-or-error carrier used by operations whose failure
// kinds are part of their contract. Error types are small structs with a
// `kind` enum and a human-readable `what()`.
template <typename T, typename E>
class Result {
public:
  Result(T value) : v_(std::in_place_index<0>, std::move(value)) {}
  Result(E error) : v_(std::in_place_index<1>, std::move(error)) {}

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const {
    assert(ok());
    return std::get<0>(v_);
  }
  T& value() {
    assert(ok());
    return std::get<0>(v_);
  }
  const E& error() const {
    assert(!ok());
    return std::get<1>(v_);
  }

  T value_or(T fallback) const { return ok() ? std::get<0>(v_) : std::move(fallback); }

private:
  std::variant<T, E> v_;
};

}  // namespace lambek
