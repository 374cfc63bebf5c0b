#pragma once

#include <gmpxx.h>

#include <string>

namespace gmtforms {

// Exact arithmetic lives on GMP. mpq_class keeps every value in lowest terms
// with a positive denominator, which is exactly the canonical form the JSON
// formats require.
using Int = mpz_class;
using Rat = mpq_class;

// Canonical string form: "num" when the denominator is 1, else "num/den".
std::string rat_to_string(const Rat& q);

// Accepts "num" or "num/den" with optional sign; canonicalizes. Throws
// ParseError on malformed input or a zero denominator.
Rat rat_from_string(const std::string& s);

// C(n, k); zero outside 0 <= k <= n.
Int binomial(long n, long k);

Int factorial(long n);

}  // namespace gmtforms
