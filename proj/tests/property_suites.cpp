#include <iostream>

#include "properties.hpp"

int main() {
  int bad = 0;
  std::cout << "suite,cases,failures,first_failure\n";
  for (const auto& r : wpcount::testing::allPropertySuites()) {
    std::cout << r.name << ',' << r.cases << ',' << r.failures << ",\"" << r.firstFailure << "\"\n";
    if (!r.ok()) ++bad;
  }
  return bad ? 1 : 0;
}
