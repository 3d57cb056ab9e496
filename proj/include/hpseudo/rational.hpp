#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hpseudo {

using Q = mpq_class;

// Accepts "p", "p/q" and leading sign; throws std::invalid_argument otherwise.
Q parse_q(std::string_view s);
std::string format_q(const Q& q);

inline int sign_of_parity(long long e) { return (e & 1) ? -1 : 1; }

}  // namespace hpseudo
