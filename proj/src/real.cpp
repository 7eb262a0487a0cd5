#include "heights/real.hpp"

#include <cstdlib>
#include <cstring>

namespace heights {

std::string Real::to_string(size_t digits) const {
  if (digits == 0) digits = static_cast<size_t>(mpfr_get_prec(v_) * 0.30103) + 2;
  char* s = nullptr;
  if (mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_) < 0) return "<mpfr error>";
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace heights
