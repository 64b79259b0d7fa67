#include "ddbb/problems/benefit_state.hpp"

#include <cstdlib>
#include <stdexcept>

namespace ddbb {

BenefitState merge_benefits(std::span<const BenefitState* const> states, std::size_t layer) {
  if (states.empty()) throw std::invalid_argument("cannot merge an empty selection");
  BenefitState out;
  out.benefits.assign(states.front()->benefits.size(), 0);
  for (std::size_t l = layer; l < out.benefits.size(); ++l) {
    bool all_pos = true;
    bool all_neg = true;
    Value min_abs = std::llabs(states.front()->benefits[l]);
    for (const auto* s : states) {
      const Value v = s->benefits[l];
      all_pos = all_pos && v >= 0;
      all_neg = all_neg && v <= 0;
      min_abs = std::min<Value>(min_abs, std::llabs(v));
    }
    if (all_pos) {
      out.benefits[l] = min_abs;
    } else if (all_neg) {
      out.benefits[l] = -min_abs;
    }
  }
  return out;
}

Value relax_benefit_arc(Value weight, const BenefitState& original, const BenefitState& merged, std::size_t layer) {
  Value w = weight;
  for (std::size_t l = layer; l < original.benefits.size(); ++l)
    w += std::llabs(original.benefits[l]) - std::llabs(merged.benefits[l]);
  return w;
}

std::string describe_benefits(const BenefitState& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.benefits.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.benefits[i]);
  }
  return out + ")";
}

}  // namespace ddbb
