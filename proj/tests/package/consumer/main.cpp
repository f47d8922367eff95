#include <iostream>

#include "tightsigma/ck_norms.hpp"

int main() {
  using namespace tightsigma;
  const auto norm = chain_norm(FiniteAlgebra(7), standard_chain(3), pairing_permutation(Pairing::interleaved, 3));
  std::cout << to_string(norm) << "\n";
  return norm == Rational(3) ? 0 : 1;
}
