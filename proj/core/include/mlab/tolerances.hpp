#pragma once

// Central table of floating-point tolerances used by the library, its tests
// and the acceptance suite.  Everything that compares two computed numbers
// picks its threshold from here.

namespace mlab::tol {

// two independent evaluation routes of the same finite sum
inline constexpr double kTypeIRelative = 1e-8;        // direct vs Type I weights
inline constexpr double kRamanujanAbs = 1e-9;         // divisor identity vs unit sum
inline constexpr double kCramerExpansionRel = 1e-8;   // Cramer vs Ramanujan expansion
inline constexpr double kSymbolExact = 1e-10;         // CRT / scaling invariance
inline constexpr double kSymbolScaling = 1e-12;       // k-scaling well-definedness
inline constexpr double kGowersOracleRel = 1e-9;      // recursion vs brute force
inline constexpr double kDualityAbs = 1e-10;          // adjoint pairing identity
inline constexpr double kPadicExact = 1e-10;          // finite p-adic identities
inline constexpr double kMeanSplitRecon = 1e-12;      // f = a + f0 reconstruction
inline constexpr double kMeanSplitEnergy = 1e-9;      // |a| = sqrt(1 - E_f)
inline constexpr double kQuadratureTol = 1e-10;       // continuous symbol target
inline constexpr double kSearchSlack = 1e-6;          // contraction bound 1 + slack

// measured-decay experiment slacks
inline constexpr double kMeanValueSlack = 0.01;       // |E Cramer - 1|
inline constexpr double kProgressionSlack = 0.05;     // progression means, x 1/phi(q)
inline constexpr double kStabilityMonotoneSlack = 0.10;
inline constexpr double kDecaySlack = 0.20;           // nonincreasing within 20%
inline constexpr double kComparisonCap = 0.10;        // little-u of Cramer - HB
inline constexpr double kM0FinalCap = 0.05;
inline constexpr double kWeylCap = 0.05;
inline constexpr double kWeylMeanSlack = 0.02;
inline constexpr double kFundLemmaMeanSlack = 0.10;   // relative to phi(W)/W

}  // namespace mlab::tol
