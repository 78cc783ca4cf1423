#include "hmsrep/error.hpp"

namespace hmsrep {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::parse_error: return "ParseError";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::non_positive_weight: return "NonPositiveWeight";
    case Errc::index_arity: return "IndexArity";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::too_large: return "TooLarge";
    case Errc::too_deep: return "TooDeep";
    case Errc::not_upper_bound: return "NotUpperBound";
    case Errc::comparable: return "Comparable";
    case Errc::lub_exists: return "LubExists";
    case Errc::unsupported: return "Unsupported";
    case Errc::unsupported_rule: return "UnsupportedRule";
    case Errc::mismatch: return "Mismatch";
    case Errc::irrational_overlap: return "IrrationalOverlap";
    case Errc::not_orthonormal: return "NotOrthonormal";
  }
  return "Unknown";
}

}  // namespace hmsrep
