// Secant geometry between two points of a sampled curve.
//
// Every functional in this library is built from the chord
// gamma(u + w) - gamma(u), its components normal to the tangents at both
// ends, and the change of the tangent along the chord. Near the diagonal
// these are O(w) and O(w^2) quantities; the kernel evaluates them from the
// Fourier representation so they keep full relative accuracy down to
// w ~ 1e-100.
#pragma once

#include <span>
#include <vector>

#include "tpe/curves.hpp"

namespace tpe {

struct Secant {
  Vec3 chord;           ///< gamma(u + w) - gamma(u)
  Vec3 tangent_start;   ///< gamma'(u) in the sample parametrization
  Vec3 tangent_end;     ///< gamma'(u + w)
  Vec3 normal_start;    ///< P_perp[gamma'(u)] chord
  Vec3 normal_end;      ///< P_perp[gamma'(u + w)] chord
  Vec3 tangent_change;  ///< gamma'(u + w) - gamma'(u)
};

/// Parameter offset on the unit torus, stored as a signed representative
/// of small magnitude so that offsets near 1 keep their precision.
struct Offset {
  double w;       ///< in (0, 1)
  double signed_; ///< w if w <= 1/2, otherwise -(1 - w), computed directly
};

/// Offsets j/N, j = 1..N-1.
std::vector<Offset> grid_offsets(int n);

/// Evaluates Secant for (sample i, offset j) pairs over fixed offsets.
/// Per-offset phase factors are shared across all rows when the samples use
/// the native Fourier parametrization.
class SecantKernel {
 public:
  SecantKernel(const CurveSamples& samples, std::vector<Offset> offsets);

  int rows() const { return samples_->size(); }
  int cols() const { return static_cast<int>(offsets_.size()); }
  const Offset& offset(int j) const { return offsets_[j]; }

  Secant operator()(int i, int j) const;

 private:
  Secant native(int i, int j) const;
  Secant reparametrized(int i, int j) const;

  const CurveSamples* samples_;
  std::vector<Offset> offsets_;
  int modes_;
  int dims_;
  // native parametrization: E_k = e^{i w_k d} - 1, F_k = E_k - i w_k d per offset
  std::vector<cplx> expm1_;
  std::vector<cplx> expm1_linear_;
  // per sample, c_{d,k} e^{i w_k u_i}
  std::vector<cplx> weighted_phase_;
};

/// Secant from sample i to the point at offset `off`, evaluated directly
/// from the curve (no shared precomputation).
Secant secant_at(const CurveSamples& samples, int i, const Offset& off);

/// Offset j/N of an N-point grid, j in [1, N-1].
Offset grid_offset(int j, int n);

// Scalar quantities derived from a secant.

/// x - v <v, x> / |v|^2, the component of x orthogonal to v.
Vec3 project_perp(const Vec3& v, const Vec3& x);

inline double chord_length(const Secant& s) { return s.chord.norm(); }

}  // namespace tpe
