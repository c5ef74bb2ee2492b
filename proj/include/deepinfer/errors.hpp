#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace deepinfer {

// Base for every error the toolkit raises on bad data or bad configuration.
// The CLI maps all of these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A bound falls outside the range of the activation it is pulled back through.
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedPredicate : public Error {
 public:
  using Error::Error;
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Malformed CSV or persisted JSON artifacts.
class DataError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  enum class Kind { Parse, Schema, Dimension };

  ModelError(Kind kind, std::optional<std::size_t> layer, const std::string& what)
      : Error(format(kind, layer, what)), kind_(kind), layer_(layer) {}

  Kind kind() const noexcept { return kind_; }
  std::optional<std::size_t> layer() const noexcept { return layer_; }

 private:
  static std::string format(Kind kind, std::optional<std::size_t> layer, const std::string& what) {
    std::string prefix;
    switch (kind) {
      case Kind::Parse:
        prefix = "parse error";
        break;
      case Kind::Schema:
        prefix = "schema error";
        break;
      case Kind::Dimension:
        prefix = "dimension error";
        break;
    }
    if (layer) prefix += " in layer " + std::to_string(*layer);
    return prefix + ": " + what;
  }

  Kind kind_;
  std::optional<std::size_t> layer_;
};

}  // namespace deepinfer
