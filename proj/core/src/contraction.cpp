#include "dlab/contraction.hpp"

#include <algorithm>
#include <cmath>

#include "dlab/error.hpp"

namespace dlab {

NormalContraction NormalContraction::truncate_at(double level) {
  if (!(level >= 0.0)) throw Error(ErrorCode::InvalidArgument, "truncation level must be >= 0");
  return {Kind::TruncateAtLevel, level};
}

double NormalContraction::operator()(double s) const noexcept {
  switch (kind) {
    case Kind::Identity: return s;
    case Kind::Clamp01: return std::clamp(s, 0.0, 1.0);
    case Kind::Abs: return std::abs(s);
    case Kind::TruncateAtLevel: return std::copysign(std::min(std::abs(s), level), s);
  }
  return s;
}

VertexFunction markov_contract(const VertexFunction& f, const NormalContraction& c) {
  return f.unaryExpr([&c](double s) { return c(s); });
}

}  // namespace dlab
