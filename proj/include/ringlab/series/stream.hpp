#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "ringlab/error.hpp"

namespace ringlab::series {

enum class SeriesClass {
  AbsolutelyConvergent,
  UnconditionallyConvergent,
  ConditionallyConvergent,
  Divergent,
  Unknown,
};

std::string to_string(SeriesClass c);

// Deterministic generator of series terms a_1, a_2, ... (1-based).
template <class V>
class TermStream {
 public:
  using Generator = std::function<V(std::size_t)>;

  TermStream() = default;
  explicit TermStream(Generator gen, SeriesClass cls = SeriesClass::Unknown, std::string name = {})
      : gen_(std::move(gen)), class_(cls), name_(std::move(name)) {}

  // Rethrows generator failures as an Error naming the index.
  V term(std::size_t i) const {
    if (i == 0) fail(ErrorKind::InvalidArgument, "term indices start at 1");
    try {
      return gen_(i);
    } catch (const std::exception& e) {
      fail(ErrorKind::InvalidArgument, "term generation failed at index " + std::to_string(i) + ": " + e.what());
    }
  }
  V operator()(std::size_t i) const { return term(i); }

  SeriesClass declared_class() const { return class_; }
  const std::string& name() const { return name_; }

  const std::optional<V>& declared_limit() const { return limit_; }
  TermStream& with_limit(V limit) {
    limit_ = std::move(limit);
    return *this;
  }

  // Streams with a declared length have term(i) = 0 for i > length.
  std::optional<std::size_t> declared_length() const { return length_; }
  TermStream& with_length(std::size_t n) {
    length_ = n;
    return *this;
  }

 private:
  Generator gen_;
  SeriesClass class_ = SeriesClass::Unknown;
  std::string name_;
  std::optional<V> limit_;
  std::optional<std::size_t> length_;
};

}  // namespace ringlab::series
