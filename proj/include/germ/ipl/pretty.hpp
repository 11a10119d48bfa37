#pragma once

#include <string>

#include "germ/ipl/typed.hpp"

namespace germ::ipl {

/// Renders a typed tree back to surface syntax. Reparsing and
/// typechecking the output yields a structurally equal tree.
std::string pretty(const TypedStmt& stmt);
std::string pretty(const TypedExpr& expr);

}  // namespace germ::ipl
