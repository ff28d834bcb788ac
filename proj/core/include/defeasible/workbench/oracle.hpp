#pragma once

// Reference evaluator: applies the inference-rule trees by global re-scan until nothing
// changes. No indexes, no worklist; meant for small theories.

#include "defeasible/model.hpp"

namespace defeasible::workbench {

/// All ten tags.
ClosureSet oracle_all(const Theory& theory);

/// The requested tag (computed together with whatever it depends on).
ClosureSet oracle_closure(const Theory& theory, Tag tag);

}  // namespace defeasible::workbench
