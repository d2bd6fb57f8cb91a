#include "dhb/quadratic.hpp"

namespace dhb {

std::string to_string(Rank3Class c) {
  switch (c) {
    case Rank3Class::NoUnit:
      return "NoUnit";
    case Rank3Class::HypergeometricType:
      return "HypergeometricType";
    case Rank3Class::ElementaryType:
      return "ElementaryType";
  }
  return "unknown";
}

}  // namespace dhb
