#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lambdalab/term.hpp"

namespace lambdalab {

struct Definition {
  Term body;
  std::size_t arity = 0;
};

/// Named-term definitions. Lookups are by definition name; iteration is in
/// name order.
class Environment {
 public:
  /// Adds a definition; returns false (and keeps the existing one) if the
  /// name is already defined.
  bool define(std::string name, Term body);
  bool remove(std::string_view name);

  const Definition* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  std::size_t size() const noexcept { return defs_.size(); }
  bool empty() const noexcept { return defs_.empty(); }
  std::vector<std::string> names() const;

  auto begin() const { return defs_.begin(); }
  auto end() const { return defs_.end(); }

 private:
  std::map<std::string, Definition, std::less<>> defs_;
};

}  // namespace lambdalab
