#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "jonq/jonquieres.hpp"
#include "jonq/poly.hpp"

namespace jonq {

/// Text form of a map: fiber "[[A,B],[C,D]]" in one variable, optional
/// base "[[a,b],[c,d]]" with rational constants (absent = identity).
struct MapSource {
  std::string fiber_matrix_text;
  std::optional<std::string> base_matrix_text;
  std::string variable = "y";

  friend bool operator==(const MapSource&, const MapSource&) = default;
};

/// Limits applied while parsing untrusted text.
inline constexpr int kMaxParsedDegree = 4096;
inline constexpr int kMaxNesting = 200;

/// expr := ['+'|'-'] term (('+'|'-') term)*, term := factor ('*' factor)*,
/// factor := atom ('^' nat)?, atom := rational | var | '(' expr ')',
/// rational := int ('/' nat)?. Multiplication must be explicit.
UniPoly parse_poly(std::string_view text, const std::string& var = "y");

/// Parses a base action; throws ParseError on bad syntax, DomainError if singular.
Moebius parse_base(std::string_view text);

/// Matrix entries may also be ratios expr '/' factor; they are cleared to the
/// primitive polynomial representative.
JonquieresMap parse_map(const MapSource& src);

/// Canonical text; throws DomainError for coefficients outside Q.
MapSource serialize(const JonquieresMap& f, const std::string& var = "y");

std::string format_fiber(const FiberMatrix& m, const std::string& var = "y");

}  // namespace jonq
