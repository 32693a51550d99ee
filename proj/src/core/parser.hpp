#pragma once

#include <string_view>

#include "core/laurent.hpp"

namespace qtc {

/// Parses the polynomial text grammar:
///
///   poly   := term (("+"|"-") term)* ;
///   term   := [coeff "*"?] factor ("*" factor)* | coeff ;
///   factor := ("x"|"y") ["^" ["-"] digits] ;
///   coeff  := digits ;
///
/// Whitespace is ignored and "2x" is accepted for "2*x". A leading sign is
/// also accepted. "-" subtracts the following term, i.e. the coefficient is
/// taken as p - c. Terms whose coefficient vanishes mod p are dropped.
/// Throws errc::parse with a 1-based position on malformed input.
LaurentPoly parse_poly(std::string_view text, PrimeModulus p);

}  // namespace qtc
