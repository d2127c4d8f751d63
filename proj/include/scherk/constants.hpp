#pragma once

namespace scherk {

// Comparison tolerance for geometric predicates (angles, map compositions).
inline constexpr double kEpsGeo = 1e-12;

// Margins within [-kEpsMargin, kEpsMargin] count as equality cases in
// admissibility reports; strict positivity means margin > kEpsMargin.
inline constexpr double kEpsMargin = 1e-10;

// Vertex-count guard for exhaustive inscribed-polygon enumeration (2^{2k}).
inline constexpr int kEnumGuardVertices = 24;

// Newton stopping: |grad| <= kTolSolve * (1 + |energy|).
inline constexpr double kTolSolve = 1e-10;

// Smallest perturbation magnitude tried by the extension backoff.
inline constexpr double kTauMin = 1e-6;

// ln(1 + sqrt(2)): outward step constant of the regular quadrilateral.
inline constexpr double kLog1PlusSqrt2 = 0.88137358701954302523;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

}  // namespace scherk
