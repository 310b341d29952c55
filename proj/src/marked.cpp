#include "diagprod/marked.hpp"

#include <sstream>

namespace diagprod {

PermMarking::PermMarking(std::vector<Perm> generators,
                         std::vector<std::string> labels)
    : gens(std::move(generators)), names(std::move(labels)) {
  if (gens.empty()) throw std::invalid_argument("PermMarking: no generators");
  if (names.size() != gens.size())
    throw std::invalid_argument("PermMarking: label count mismatch");
  degree = gens[0].degree();
  for (const auto& g : gens)
    if (g.degree() != degree)
      throw std::invalid_argument("PermMarking: generator degrees differ");
}

PermMarking classical_level_marking(int d) {
  return PermMarking({theta_az(AZElement::shift_gen(), d),
                      theta_az(AZElement::tau(), d)},
                     {"s", "t"});
}

std::string ball_growth_csv(const BallTable& t) {
  std::ostringstream out;
  out << "radius,size,new_elements\n";
  std::size_t total = 0;
  for (std::size_t r = 0; r < t.level_sizes.size(); ++r) {
    total += t.level_sizes[r];
    out << r << ',' << total << ',' << t.level_sizes[r] << '\n';
  }
  return out.str();
}

}  // namespace diagprod
