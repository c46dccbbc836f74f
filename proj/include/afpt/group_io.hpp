#pragma once

#include <string>
#include <string_view>

#include "afpt/group.hpp"

namespace afpt {

/// Parses a group definition.
///
/// Line-oriented; `#` starts a comment, blank lines are ignored.
///
///     family free|free_product|direct_product|finite
///     generators a b          (free generators; free and direct_product only)
///     factor <name>           (opens a finite factor block)
///       elements e r          (first element is the identity)
///       generators r          (optional; defaults to every nontrivial element)
///       row e r               (one row per element, in element order)
///       row r e
///     end
///
/// free_product needs at least one factor, direct_product and finite exactly one.
/// Inverses of free generators are named `<g>^-1`.
GroupFamily parse_group_definition(std::string_view text);

/// Reads and parses a definition file; ParseError carries the line number.
GroupFamily load_group_definition(const std::string& path);

/// Definition text of a built-in family: `F<k>`, `F<k>xZ<m>`, `Z<m>*Z<n>`,
/// `Z<m>` or the alias `D_inf` for Z2*Z2.
std::string builtin_group_definition(std::string_view name);

/// Built-in name or a path to a definition file.
GroupFamily resolve_group(const std::string& name_or_path);

/// Cyclic group of order m with elements e, x, x2, ..., x<m-1>, generated by x.
FiniteTable cyclic_table(std::string name, const std::string& symbol, int m);

}  // namespace afpt
