// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_WARP_H_
#define VOXRESTORE_WARP_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "voxrestore/disguise_spec.h"
#include "voxrestore/stft.h"

namespace voxrestore {

inline constexpr std::size_t kWarpKnots = 8193;

// Monotone map of normalized frequency over [0, pi]. The closed-form map is
// evaluated directly and also tabulated on a uniform knot grid; the table
// brackets inverse lookups, which are then refined by bisection on the map.
// The VTLN families are pinned so that 0 -> 0 and pi -> pi; the
// pitch-scaling warp w' = s * w is left unclamped, so values above pi mark
// frequencies pushed past Nyquist. Immutable once built; copies share the map.
class WarpFunction {
 public:
  static WarpFunction Identity(std::size_t knots = kWarpKnots);
  // Wraps `map`, tabulated on the knot grid. Throws if the table is not
  // strictly increasing.
  static WarpFunction FromMap(const std::function<double(double)>& map,
                              std::size_t knots = kWarpKnots, bool pin_endpoints = false);

  double Map(double omega) const;
  // Preimage of `omega_out`, or nullopt when it is outside the table's range.
  std::optional<double> Inverse(double omega_out) const;
  // The inverse warp, tabulated on the same knot grid. Requires a warp onto
  // [0, pi] (endpoint-pinned).
  WarpFunction Inverted() const;

  bool is_identity() const { return identity_; }
  bool IsEndpointPinned() const;
  bool IsStrictlyIncreasing() const;

  std::span<const double> knots() const { return knots_; }
  std::span<const double> values() const { return values_; }

 private:
  using Map_ = std::shared_ptr<const std::function<double(double)>>;

  WarpFunction(std::vector<double> knots, std::vector<double> values, bool identity)
      : knots_(std::move(knots)), values_(std::move(values)), identity_(identity) {}

  std::vector<double> knots_;
  std::vector<double> values_;
  bool identity_ = false;
  Map_ map_;
  Map_ inverse_map_;  // set on inverted warps: the exact original map
};

// Closed-form warp for a spec, tabulated. Pitch families give w' = s * w with
// s = 2^(alpha/12). VTLN families:
//   bilinear   w' = w + 2 atan(a sin w / (1 - a cos w))   (the all-pass map)
//   quadratic  w' = w + a (w/pi - (w/pi)^2)
//   power      w' = pi (w/pi)^(1 + a)
//   piecewise  w' = l w below w0, linear to (pi, pi) above;
//              w0 = 7pi/8 for l <= 1, 7pi/(8 l) otherwise.
// An identity spec yields the exact identity map.
WarpFunction BuildWarp(const DisguiseSpec& spec);

enum class WarpDirection { kForward, kInverse };

// Moves spectral content along `warp`. Forward: the output bin at w' reads the
// input at warp^-1(w'), so content at w lands on warp(w). Inverse: the output
// at w' reads the input at warp(w'). Reads are linear interpolations between
// neighbouring bins; output bins with no preimage inside [0, pi] copy the
// nearest in-range output bin below them. Phases, when present, start from
// the same map (interpolated on the unit circle) in the first frame and then
// advance frame to frame by each source bin's instantaneous frequency scaled
// with the warp, so that moved partials stay coherent across frames.
Spectrogram ApplySpectralWarp(const Spectrogram& in, const WarpFunction& warp,
                              WarpDirection direction);

// f^-1 for a spec. Pitch families and the bilinear warp invert in closed form
// (param -> -param); quadratic, power and piecewise only have the numerically
// inverted table. `warp` is always populated and is applied forward.
struct InverseTransform {
  std::optional<DisguiseSpec> closed_form;
  WarpFunction warp;
};
InverseTransform InvertSpec(const DisguiseSpec& spec);

}  // namespace voxrestore

#endif  // VOXRESTORE_WARP_H_
