#ifndef SKV_EXPECTED_HPP
#define SKV_EXPECTED_HPP

#include <cassert>
#include <optional>
#include <string>
#include <utility>

namespace skv {

// Value-or-error. Several operations have *meaningful* failure modes
// (a square root that does not exist encodes a geometric statement),
// so failures travel as values, not exceptions.
template <class T>
class Expected {
 public:
  Expected(T value) : value_(std::move(value)) {}
  static Expected failure(std::string why) {
    Expected e;
    e.error_ = std::move(why);
    return e;
  }

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  const T& operator*() const {
    assert(ok());
    return *value_;
  }
  const T* operator->() const {
    assert(ok());
    return &*value_;
  }
  const std::string& error() const { return error_; }

 private:
  Expected() = default;
  std::optional<T> value_;
  std::string error_;
};

}  // namespace skv

#endif
