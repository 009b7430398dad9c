#pragma once

namespace torsionlab::constants {

/// Planar dimension used throughout.
inline constexpr int kDim = 2;

/// Strong Hardy constant valid for every proper simply connected planar domain.
inline constexpr double kHardySimplyConnected = 16.0;

/// Upper surrogate for the sharp constant sup lambda_1 ||v||_inf in the plane:
/// 4 + 3 m log 2 with m = 2. Only an upper bound is known, so every lower
/// bound built from it is weaker than the true one and stays sound.
inline constexpr double kTorsionBoundSurrogate = 8.158883083359672;

/// First positive zero of J0 and its square (lambda_1 of the unit disk),
/// frozen from the power-series bisection oracle in the verification library.
inline constexpr double kBesselJ0 = 2.40482555769577;
inline constexpr double kBesselJ0Squared = 5.78318596294678;

}  // namespace torsionlab::constants
