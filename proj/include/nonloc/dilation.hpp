#pragma once

#include <optional>
#include <vector>

#include "nonloc/linalg.hpp"
#include "nonloc/matrix.hpp"

namespace nonloc {

// Rank-one split of a POVM: element k equals sum_l |x_{k,l}><x_{k,l}| with
// every vector nonzero and the flattened set completing to the identity.
struct Rank1Decomposition {
  std::size_t dim = 0;
  std::vector<std::vector<Vector>> vectors;  // [outcome][l]
};

// Spectral rank-one decomposition, padded (by splitting the largest term)
// so that every outcome carries exactly L vectors. L defaults to the
// largest element rank. Zero elements are rejected.
Rank1Decomposition rank1_decompose(const std::vector<Matrix> &povm,
                                   std::size_t vectors_per_outcome = 0);

// PVM on H (x) G reproducing a POVM on H through the isometry
// V|xi> = |xi> (x) |0>: element_k = V* P_k V.
struct DilationResult {
  std::vector<Matrix> pvm;   // projectors on H (x) G
  Matrix isometry;           // (dim H * dim G) x dim H
  std::size_t ancilla_dim = 1;
  Matrix p_perp;             // projector onto the orthonormal set's complement
  bool trivial = false;      // input was already projective
};

// Dilates a POVM to a projective measurement without entangling dynamics:
// the POVM's rank-one vectors are lifted to an orthonormal set
// y_{k,l} = x_{k,l} (x) |0> + eta (x) phi_{k,l} on H (x) C^{NL-d+1}, with
// eta fixed to the first basis vector. Projective inputs return the trivial
// dilation (G = C^1). Every claimed identity is verified to 1e-9 before
// returning.
DilationResult dilate_povm(const std::vector<Matrix> &povm,
                           std::size_t vectors_per_outcome = 0);

// Iterated construction for a pair of settings: both outputs are projective
// on H (x) G0 (x) G1 and pull back through the single isometry
// V|xi> = |xi> (x) |0> (x) |0>. POVMs with unequal outcome counts are
// padded with zero elements.
struct TwoSettingDilation {
  std::vector<Matrix> pvm0;
  std::vector<Matrix> pvm1;
  Matrix isometry;  // (dim H * g0 * g1) x dim H
  std::size_t g0_dim = 1;
  std::size_t g1_dim = 1;
};

TwoSettingDilation dilate_two_settings(const std::vector<Matrix> &povm0,
                                       const std::vector<Matrix> &povm1);

}  // namespace nonloc
