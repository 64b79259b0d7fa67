#pragma once

// Marginal-benefit state shared by the MCP and MAX2SAT models: one signed
// entry per variable, zero for variables already decided.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ddbb/model.hpp"

namespace ddbb {

struct BenefitState {
  std::vector<Value> benefits;

  friend bool operator==(const BenefitState&, const BenefitState&) = default;
};

// Componentwise merge for l >= layer: all non-negative -> minimum, all
// non-positive -> the one closest to zero, mixed signs -> 0.
BenefitState merge_benefits(std::span<const BenefitState* const> states, std::size_t layer);

// Redirected arc weight: w + sum over l >= layer of (|original_l| - |merged_l|).
Value relax_benefit_arc(Value weight, const BenefitState& original, const BenefitState& merged, std::size_t layer);

std::string describe_benefits(const BenefitState& s);

}  // namespace ddbb

template <>
struct std::hash<ddbb::BenefitState> {
  std::size_t operator()(const ddbb::BenefitState& s) const noexcept {
    std::size_t h = s.benefits.size();
    for (auto v : s.benefits) h ^= std::hash<ddbb::Value>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};
