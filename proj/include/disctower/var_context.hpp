#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "disctower/error.hpp"

namespace disctower {

inline constexpr std::size_t kMaxVariables = 8;

/// Ordered variable names x_1..x_n. The prefix (x_1..x_i) is what the tower
/// calls x^i. Parameters are a subset of the variables singled out for
/// sampling by the numeric module.
class VarContext {
 public:
  VarContext() = default;
  explicit VarContext(std::vector<std::string> names, std::vector<std::string> parameters = {})
      : names_(std::move(names)), parameters_(std::move(parameters)) {
    if (names_.size() > kMaxVariables) {
      throw Error(ErrorKind::InvalidArgument,
                  "at most " + std::to_string(kMaxVariables) + " variables are supported");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw Error(ErrorKind::InvalidArgument, "empty variable name");
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) {
          throw Error(ErrorKind::InvalidArgument, "duplicate variable '" + names_[i] + "'");
        }
      }
    }
    for (const auto& p : parameters_) {
      if (!index_of(p)) throw Error(ErrorKind::InvalidArgument, "parameter '" + p + "' is not a variable");
    }
  }

  std::size_t arity() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& parameters() const noexcept { return parameters_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  bool is_parameter(std::size_t i) const {
    return std::find(parameters_.begin(), parameters_.end(), names_.at(i)) != parameters_.end();
  }

  friend bool operator==(const VarContext&, const VarContext&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::string> parameters_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

inline ContextPtr make_context(std::vector<std::string> names, std::vector<std::string> parameters = {}) {
  return std::make_shared<const VarContext>(std::move(names), std::move(parameters));
}

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace disctower
