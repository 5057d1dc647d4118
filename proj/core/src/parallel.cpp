#include "uareg/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace uareg {

unsigned worker_count() {
  const char* env = std::getenv("UAREG_WORKERS");
  if (env == nullptr) return 1;
  unsigned value = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc{} || ptr != end || value == 0) return 1;
  return value;
}

}  // namespace uareg
