#ifndef ATN_BIGINT_HPP
#define ATN_BIGINT_HPP

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace atn {

// Expression templates are disabled so the type composes with Eigen products.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

// Throws std::invalid_argument on anything that is not an optionally signed
// run of decimal digits.
BigInt parse_decimal(std::string_view text);

inline int sign_of(const BigInt& v) { return v.sign(); }

}  // namespace atn

#endif  // ATN_BIGINT_HPP
