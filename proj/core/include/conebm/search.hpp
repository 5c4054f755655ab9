// Bounded-height enumeration of coprime integral points on the cone,
// reduction census mod p, and the end-to-end obstruction verification.
#pragma once

#include "conebm/brauer.hpp"

#include <optional>

namespace conebm {

struct SearchCensus {
  Int height_bound = 0;
  std::vector<ConePoint> solutions;  // lexicographic
  Int census_mod = 0;
  std::map<Vec4, Int> census;  // exact residue tuple -> multiplicity
};

// All coprime integer solutions with every |x_i| <= height, each exact tuple
// once (sign variants are distinct tuples), in lexicographic order.
std::vector<ConePoint> search_integral_points(const QuadricForm& q, Int height);

SearchCensus reduction_census(const std::vector<ConePoint>& solutions, Int p, Int height);

struct VerifyReport {
  Int height_bound = 0;
  Int prime = 0;
  Vec4 base_point{};
  SearchCensus census;
  // Every smooth residue tuple mod p on the cone, with the invariant of its
  // Z_p-lifts.
  std::map<Vec4, LocalInvariant> classification;
  // Census keys whose lifts carry invariant 1/2; the theorem predicts none.
  std::vector<Vec4> obstruction_violations;
  Int invariant_zero_classes = 0;
  Int hit = 0;
  bool passed = false;
};

// Searches up to the height bound, builds the obstruction class from a found
// (or supplied) base point, classifies every smooth tuple mod p, and checks
// that each solution lands on an invariant-zero tuple.
VerifyReport verify_theorem(const QuadricForm& q, Int height, Int p, int precision = 8,
                            std::optional<ConePoint> base = std::nullopt);

}  // namespace conebm
