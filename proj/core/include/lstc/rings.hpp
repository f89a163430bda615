#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lstc/algebra.hpp"

namespace lstc {

enum class ClassicKind { Sphere, RP, CP, Torus, SurfaceOrientable, SurfaceNonorientable };

/// Spheres, projective spaces, tori and closed surfaces. RP^n and N_h exist over GF(2) only.
GradedAlgebra classic_ring(ClassicKind kind, int n, FieldTag field = FieldTag::GF2);

GradedAlgebra sphere_ring(int n, FieldTag field = FieldTag::GF2);
GradedAlgebra rp_ring(int n);
GradedAlgebra cp_ring(int n, FieldTag field = FieldTag::GF2);
GradedAlgebra torus_ring(int n, FieldTag field = FieldTag::GF2);
GradedAlgebra surface_orientable_ring(int g, FieldTag field = FieldTag::GF2);
GradedAlgebra surface_nonorientable_ring(int h);

/// Chern-class presentation of the complex Grassmannian of d-planes in C^n.
GradedAlgebra grassmann_ring(int d, int n, FieldTag field = FieldTag::GF2);

struct GppsFactor {
  int n = 1;  // sphere dimension
  int p = 0;  // number of reflected coordinates
  friend bool operator==(const GppsFactor&, const GppsFactor&) = default;
};

struct GppsSpec {
  GradedAlgebra base;
  Element alpha;
  std::vector<GppsFactor> factors;
  /// Fibre generators are named prefix1, prefix2, ...
  std::string fibre_prefix = "b";
};

/// base (x) Lambda(b_1..b_r) with b_j^2 = binom(n_j+1-p_j, n_j) alpha^{n_j} b_j and
/// Sq(b_j) = (1+alpha)^{n_j+1-p_j} b_j. Fibre generators come first in the generator order.
GradedAlgebra gpps_ring(const GppsSpec& spec);

GradedAlgebra pps_ring(std::vector<int> ns);
GradedAlgebra klein_ring(int n);
/// w1 overrides the default x_1 + ... + x_{g+1}; it is a polynomial in the x_i.
GradedAlgebra xg_ring(int g, int n, const std::optional<Polynomial>& w1 = std::nullopt);
GradedAlgebra product_model_ring(const GradedAlgebra& base, const GradedAlgebra& fibre);
GradedAlgebra dold_grassmann_ring(int d, int n, std::vector<int> ns);

/// Per-degree dimensions 0..top.
std::vector<std::size_t> degree_dims(const GradedAlgebra& a);

}  // namespace lstc
