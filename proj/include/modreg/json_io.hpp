#pragma once

#include "modreg/modsym.hpp"
#include "modreg/wedge.hpp"

#include <optional>
#include <string>

namespace modreg::json_io {

// cocycle interchange: {"N", "group", "a", "b", "terms":[{"m", "quad", "v"}]}
std::string cocycle_to_json(const wedge::MotivicCocycle& xi, const std::string& group_name);
wedge::MotivicCocycle cocycle_from_json(const std::string& text);

std::string divisor_to_json(long N, const std::string& unit_name, const units::UnitExpr& v);

std::string cycle_to_json(const modsym::Cycle& c);

// continued-fraction rational recognition: |x - p/q| < tol with
// max(|p|, q) <= height_bound; returns nothing rather than guessing
std::optional<mpq_class> recognize_rational(const mpfield::Real& x, const mpfield::Real& tol,
                                            long height_bound);

}  // namespace modreg::json_io
