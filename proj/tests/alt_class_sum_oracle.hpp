#pragma once

#include <vector>

#include "diagprod/characters.hpp"
#include "diagprod/perm.hpp"
#include "diagprod/quadratic.hpp"

namespace diagprod::oracle {

/// Character table of Alt(5) computed from first principles: conjugacy
/// classes by brute-force closure, class-algebra structure constants by
/// counting products over all 60 elements, central characters as exact
/// eigenvectors of a class-sum matrix (characteristic polynomial expanded
/// by Leibniz, roots extracted over Q and Q(sqrt(5))), dimensions from
/// orthogonality. Independent of the Murnaghan-Nakayama / splitting path.
struct Alt5Table {
  std::vector<std::vector<Perm>> classes;
  std::vector<Perm> reps;
  std::vector<std::vector<QuadVal>> chars;  // chars[i][c] = chi_i(rep_c)
  std::vector<long long> dims;
};

Alt5Table alt5_class_sum_table();

}  // namespace diagprod::oracle
