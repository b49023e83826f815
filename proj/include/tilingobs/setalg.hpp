#pragma once

// Essential difference sets and the packing-region obstruction.

#include "tilingobs/boxset.hpp"

#include <string>

namespace tilingobs {

/// m(S ∩ (S + t)), exact.
inline Rational overlap_measure(const BoxSet& s, const Point& t) {
  if (static_cast<int>(t.size()) != s.dim()) throw InputError("translation dimension mismatch");
  const BoxSet n = normalize(s);
  Rational total = 0;
  Rational vol;
  for (const auto& bi : n.boxes()) {
    for (const auto& bj : n.boxes()) {
      Box shifted = bj;
      for (int k = 0; k < n.dim(); ++k) { shifted.lo[k] += t[k]; shifted.hi[k] += t[k]; }
      if (box_overlap(bi, shifted, vol)) total += vol;
    }
  }
  return total;
}

/// Δ(S) = {t : m(S ∩ (S+t)) > 0}, as the union of the open difference boxes
/// int(B_i - B_j) over all pairs of normalized boxes.
inline BoxSet essential_difference(const BoxSet& s) {
  const BoxSet n = normalize(s);
  std::vector<Box> diffs;
  diffs.reserve(n.size() * n.size());
  for (const auto& bi : n.boxes()) {
    for (const auto& bj : n.boxes()) {
      Point lo(n.dim()), hi(n.dim());
      for (int k = 0; k < n.dim(); ++k) {
        lo[k] = bi.lo[k] - bj.hi[k];
        hi[k] = bi.hi[k] - bj.lo[k];
      }
      diffs.emplace_back(std::move(lo), std::move(hi));
    }
  }
  return normalize(BoxSet(n.dim(), std::move(diffs), true));
}

/// Containment up to null sets: m(a \ b) == 0.
inline bool is_subset(const BoxSet& a, const BoxSet& b) {
  require_same_dim(a, b);
  return set_difference(a, b).empty();
}

inline bool is_packing_region(const BoxSet& region, const BoxSet& a) {
  require_same_dim(region, a);
  return is_subset(essential_difference(region), essential_difference(a));
}

inline Rational symdiff_measure(const BoxSet& a, const BoxSet& b) {
  return set_symdiff(a, b).raw_volume();
}

/// Whether t lies in Δ(S), decided by the overlap measure (boundary points
/// are therefore unambiguous).
inline bool in_essential_difference(const BoxSet& s, const Point& t) {
  return overlap_measure(s, t) > 0;
}

enum class VerdictTag { NotSpectralNotTile, NoWeakTilingOfComplement, Inconclusive };

inline std::string to_string(VerdictTag tag) {
  switch (tag) {
    case VerdictTag::NotSpectralNotTile: return "NotSpectralNotTile";
    case VerdictTag::NoWeakTilingOfComplement: return "NoWeakTilingOfComplement";
    case VerdictTag::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

struct Verdict {
  VerdictTag tag = VerdictTag::Inconclusive;
  BoxSet witness;  // the packing region that was tested
  std::string citation;
  bool packing_region = false;
  Rational measure_a;
  Rational measure_region;
};

/// A packing region D with m(D) > m(A) rules out both spectrality and
/// translational tiling; if moreover D ⊇ A, A cannot weakly tile its
/// complement either.
inline Verdict obstruction_verdict(const BoxSet& a, const BoxSet& region) {
  require_same_dim(a, region);
  Verdict v;
  v.witness = normalize(region);
  v.measure_a = measure(a);
  v.measure_region = v.witness.raw_volume();
  v.packing_region = is_packing_region(region, a);
  if (!v.packing_region || !(v.measure_region > v.measure_a)) {
    v.citation = v.packing_region ? "packing region has m(D) <= m(A)" : "D is not a packing region";
    return v;
  }
  if (is_subset(a, region)) {
    v.tag = VerdictTag::NoWeakTilingOfComplement;
    v.citation = "packing region D ⊇ A with m(D) > m(A): no weak tiling of the complement";
  } else {
    v.tag = VerdictTag::NotSpectralNotTile;
    v.citation = "packing region D with m(D) > m(A): neither spectral nor a translational tile";
  }
  return v;
}

}  // namespace tilingobs
