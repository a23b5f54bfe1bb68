#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "jonq/jonquieres.hpp"
#include "jonq/mu.hpp"
#include "jonq/parser.hpp"

namespace jonq::testing {

struct ReferenceMap {
  std::string name;
  std::string fiber;
  std::optional<std::string> base;
  int mu;
  CaseTag tag;
  JonquieresMap map() const;
};

/// Worked examples with their published mu and case.
const std::vector<ReferenceMap>& reference_corpus();
const ReferenceMap& reference(const std::string& name);

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);
/// Integer coefficients in [lo, hi], exact degree `deg` (deg < 0 gives 0).
UniPoly random_poly(Rng& rng, int deg, int lo = -5, int hi = 5);
UniPoly random_nonzero_poly(Rng& rng, int max_deg, int lo = -5, int hi = 5);
UniPoly random_monic(Rng& rng, int deg, int lo = -5, int hi = 5);
Moebius random_moebius(Rng& rng, int lo = -4, int hi = 4);

/// Random invertible fiber matrix with entry degrees <= max_deg.
FiberMatrix random_fiber(Rng& rng, int max_deg);
JonquieresMap random_j0(Rng& rng, int max_deg);
JonquieresMap random_map(Rng& rng, int max_deg);

/// Map in J0 of the requested resolved case, conjugated by an element of
/// SL(2, Q[y]) so it is not in normal form. Entry degrees stay <= 6.
JonquieresMap random_twist(Rng& rng, CaseTag tag);

/// Plane degree from the homogenized components restricted to random
/// projective lines; shares no code with plane_degree.
int reference_plane_degree(const JonquieresMap& f, Rng& rng);

}  // namespace jonq::testing
