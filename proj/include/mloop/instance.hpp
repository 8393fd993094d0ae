#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mloop/classify.hpp"

namespace mloop {

/// A fully built problem instance: the algebra, the loop context derived
/// from the declared automorphism family, and the named module specs, in
/// document order.
struct Instance {
  std::shared_ptr<const ChevalleyAlgebra> algebra;
  LoopContext context;
  std::vector<std::pair<std::string, ModuleSpec>> specs;

  /// Looks up a spec by name; throws an UnknownSpec error when absent.
  const ModuleSpec& spec(const std::string& name) const;
};

/// Parses an instance document.  Grammar errors raise SyntaxError with a
/// byte offset; semantic errors keep their module error kind with the
/// offending statement's offset appended.
Instance parse_instance(const std::string& text);

}  // namespace mloop
