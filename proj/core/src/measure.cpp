#include "dlab/measure.hpp"

#include <cmath>
#include <string>

#include "dlab/error.hpp"

namespace dlab {

MeasureSpace::MeasureSpace(std::vector<double> mass) : mass_(std::move(mass)) {
  for (std::size_t x = 0; x < mass_.size(); ++x) {
    if (!(mass_[x] > 0.0) || !std::isfinite(mass_[x])) {
      throw Error(ErrorCode::NonPositiveMeasure,
                  "m(" + std::to_string(x) + ") must be finite and strictly positive");
    }
  }
  // Smallest-first accumulation keeps the total accurate for decaying measures.
  for (auto it = mass_.rbegin(); it != mass_.rend(); ++it) total_ += *it;
}

MeasureSpace MeasureSpace::uniform(Index n, double total) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "uniform measure needs n >= 1");
  return MeasureSpace(std::vector<double>(static_cast<std::size_t>(n), total / static_cast<double>(n)));
}

double MeasureSpace::mass_of(std::span<const Index> subset) const {
  double sum = 0.0;
  for (Index x : subset) {
    if (x < 0 || x >= size()) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(x));
    sum += mass_[static_cast<std::size_t>(x)];
  }
  return sum;
}

MeasureSpace MeasureSpace::restrict_to(std::span<const Index> inside) const {
  std::vector<double> out;
  out.reserve(inside.size());
  for (Index x : inside) {
    if (x < 0 || x >= size()) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(x));
    out.push_back(mass_[static_cast<std::size_t>(x)]);
  }
  return MeasureSpace(std::move(out));
}

MeasureSpace MeasureSpace::along(std::span<const Index> order, std::span<const double> values) {
  if (order.size() != values.size()) {
    throw Error(ErrorCode::SizeMismatch, "enumeration and value sequence differ in length");
  }
  std::vector<double> out(order.size(), 0.0);
  std::vector<char> seen(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Index x = order[i];
    if (x < 0 || x >= static_cast<Index>(order.size()) || seen[static_cast<std::size_t>(x)]) {
      throw Error(ErrorCode::BadEnumeration, "enumeration is not a permutation");
    }
    seen[static_cast<std::size_t>(x)] = 1;
    out[static_cast<std::size_t>(x)] = values[i];
  }
  return MeasureSpace(std::move(out));
}

}  // namespace dlab
