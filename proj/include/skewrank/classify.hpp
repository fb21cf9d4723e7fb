#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "skewrank/rank.hpp"

namespace skewrank {

enum class PlaneLabel { PlaneG, PlaneT, PlaneP, Plane5 };

std::string label_name(PlaneLabel label);

/// The canonical representative of the orbit over the given field, embedded
/// in dimension 6 (Plane5 maps to the order-5 plane inside <e0..e4>).
MatrixSubspace canonical_form(PlaneLabel label, const FieldPtr& f);

/// Locus of special lines of a constant-rank-4 plane, in dual coordinates.
enum class LocusKind { Empty, Conic, PencilLine, All };

struct SpecialLocus {
  LocusKind kind = LocusKind::Empty;
  /// Reduced defining form in the three dual coordinates; absent for
  /// Empty and All.
  std::optional<HomogPoly> defining_form;
};

/// Which of the two constant-rank branches of the order-5 normal family the
/// reduction landed in: the trailing generator ends in e1^g with g = e2 or
/// g = e3 (0-indexed).
enum class Order5Branch { GIsE3, GIsE4 };

/// Outcome of reducing a constant-rank-4 plane of 5x5 skew matrices to the
/// three-generator normal family
///   e0^e1 + e2^e3,  e0^e2 + e1^f,  e0^e4 + e1^g
/// with f = f3 e2 + f4 e3 + f5 e4 (parameter names follow the 1-indexed
/// convention f = f3 e3 + f4 e4 + f5 e5).
struct Order5Report {
  std::vector<SkewTensor> reduced_generators;
  Order5Branch branch = Order5Branch::GIsE3;
  std::vector<Scalar> f_params;  // (f3, f4, f5)
  Matrix reduction_basis;        // 5x5; reduced span transformed by it = input
};

/// Classification of a plane of 6x6 skew matrices of constant rank 4 into
/// one of the four orbits, with an explicit witness.
struct OrbitReport {
  PlaneLabel label = PlaneLabel::PlaneG;
  /// Invertible 6x6 matrix g with canonical_form(label) transformed by g
  /// equal to the input span; present for PlaneG/PlaneT/PlaneP.
  std::optional<Matrix> witness;
  /// The 5-space H with input inside Lambda^2 H; present for Plane5.
  std::optional<Subspace> hyperplane_witness;
  /// Square roots adjoined to the input field (at most one, PlaneG only).
  std::vector<Scalar> extension_radicands;
  /// Field of the witness entries.
  FieldPtr field;
  /// For Plane5: the reduction of the restriction to H.
  std::optional<Order5Report> restricted;
};

SpecialLocus special_locus(const MatrixSubspace& plane);

OrbitReport classify_plane(const MatrixSubspace& plane);

Order5Report classify_plane_order5(const MatrixSubspace& plane);

/// Checks a full witness exactly: the canonical span must map onto the input
/// span. Plane5 reports are checked via their hyperplane witness instead.
bool verify_witness(const OrbitReport& report, const MatrixSubspace& plane);

/// Seeded random GL6(Q)-translate of the canonical form; deterministic.
MatrixSubspace random_plane(PlaneLabel label, std::uint64_t seed);

/// Corollary-style check on a 4-generator space: returns the constant-rank
/// decision, which is false for every such space.
bool no_constant_rank_3space(const MatrixSubspace& space);

}  // namespace skewrank
