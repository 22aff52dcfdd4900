#pragma once

// Text form of polynomials: terms joined by '+' / '-', each term a product of
// factors separated by '*'. A factor is a real literal, a parenthesized
// complex literal "(a+bi)", or a variable "x<k>" with optional "^e".
// Whitespace (including newlines) is ignored.
//
//   -3*x0^4 + 2.5*x0*x1^3 - x2 + (1-2i)*x1

#include <optional>
#include <string>
#include <string_view>

#include "gadkit/polycore.hpp"

namespace gadkit {

struct PrintOptions {
  /// Imaginary parts with |im| <= imag_tol * |c| are not printed.
  double imag_tol = 1e-8;
};

/// Parses the text format. When nvars is given every variable index must be
/// below it; otherwise nvars = 1 + the largest index seen.
Poly parse_poly(std::string_view text, std::optional<std::size_t> nvars = std::nullopt);

/// Highest degree first. Real coefficients are printed with 17 significant
/// digits so parse_poly(to_string(p)) reproduces p bit for bit.
std::string to_string(const Poly& p, const PrintOptions& opts = {});

/// 17 significant digits, shortest of %g forms ("1", "-0.5", "1e-20").
std::string format_double(double x);

}  // namespace gadkit
