#include "nuframe/grid.hpp"

#include <string>

#include "nuframe/errors.hpp"

namespace nuframe {

FrequencyGrid::FrequencyGrid(Rational a, Rational b, int log2_n)
    : a_(a), b_(b), log2_n_(log2_n) {
  if (!(a_ < b_)) {
    throw Error(ErrorCode::BadGrid, "grid needs a < b, got " + a_.str() + ", " + b_.str());
  }
  if (log2_n < kMinLog2 || log2_n > kMaxLog2) {
    throw Error(ErrorCode::BadGrid, "log2_n = " + std::to_string(log2_n) + " outside [" +
                                        std::to_string(kMinLog2) + ", " +
                                        std::to_string(kMaxLog2) + "]");
  }
  a_d_ = a_.to_double();
  h_ = ((b_ - a_) / Rational(std::int64_t{1} << log2_n)).to_double();
}

}  // namespace nuframe
