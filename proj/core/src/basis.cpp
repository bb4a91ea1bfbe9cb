#include "fiberwalk/basis.hpp"

#include <algorithm>

namespace fiberwalk {

Move::Move(IntVector v) : vector(std::move(v)) {
  if (vector.empty()) throw ModelError("move vector is empty");
  positive_part.resize(vector.size());
  negative_part.resize(vector.size());
  bool nonzero = false;
  for (std::size_t i = 0; i < vector.size(); ++i) {
    if (vector[i] > 0)
      positive_part[i] = vector[i];
    else
      negative_part[i] = -vector[i];
    if (vector[i] != 0) nonzero = true;
  }
  if (!nonzero) throw ModelError("move vector is zero");
}

MarkovBasis independence_basis(std::size_t d1, std::size_t d2) {
  if (d1 < 2 || d2 < 2)
    throw DimensionError("independence basis needs both dimensions >= 2");
  MarkovBasis out;
  out.design = independence_design(d1, d2).design;
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t k = i + 1; k < d1; ++k)
      for (std::size_t j = 0; j < d2; ++j)
        for (std::size_t l = j + 1; l < d2; ++l) {
          IntVector v(d1 * d2, 0);
          v[i * d2 + j] = 1;
          v[k * d2 + l] = 1;
          v[i * d2 + l] = -1;
          v[k * d2 + j] = -1;
          out.moves.push_back(Move(std::move(v)));
        }
  return out;
}

}  // namespace fiberwalk
