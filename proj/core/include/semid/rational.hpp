#pragma once

#include <gmpxx.h>

#include <string>

namespace semid {

/// Exact rational number.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace semid
