#include "ijoin/engine.hpp"

#include <string>

namespace ijoin {

double compute_gnorf(const JoinStats& eager, const JoinStats& lazy) {
  if (eager.output_count != lazy.output_count) {
    throw std::logic_error("eager and lazy runs disagree on output size (" +
                           std::to_string(eager.output_count) + " vs " +
                           std::to_string(lazy.output_count) + ")");
  }
  if (lazy.getnext_count == 0) return eager.getnext_count == 0 ? 1.0 : 0.0;
  return static_cast<double>(eager.getnext_count) / static_cast<double>(lazy.getnext_count);
}

}  // namespace ijoin
