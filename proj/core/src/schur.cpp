#include <cmath>

#include "gadkit/decomposer.hpp"

namespace gadkit {

namespace {

// Exchange the diagonal entries k and k+1 of the upper-triangular t with a
// unitary rotation G acting on that coordinate pair: t <- G^* t G, q <- q G.
void swap_adjacent(CMatrix& t, CMatrix& q, Eigen::Index k) {
  const cplx a = t(k, k);
  const cplx b = t(k + 1, k + 1);
  const cplx u = t(k, k + 1);
  // (u, b - a) is an eigenvector of the 2x2 block for the eigenvalue b
  cplx v1 = u;
  cplx v2 = b - a;
  const double nv = std::hypot(std::abs(v1), std::abs(v2));
  Eigen::Matrix2cd g;
  if (nv == 0.0) {
    g << 0.0, 1.0, 1.0, 0.0;
  } else {
    v1 /= nv;
    v2 /= nv;
    g << v1, -std::conj(v2), v2, std::conj(v1);
  }
  t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * g;
  q.middleCols(k, 2) = q.middleCols(k, 2) * g;
  t(k + 1, k) = 0.0;
}

}  // namespace

void reorder_schur(CMatrix& t, CMatrix& q, std::vector<int>& labels) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (t.rows() != n || t.cols() != n || q.cols() != n)
    throw DimensionError("reorder_schur: size mismatch");
  // bubble sort of the diagonal by label; each exchange is one unitary swap
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      if (labels[uk] > labels[uk + 1]) {
        swap_adjacent(t, q, k);
        std::swap(labels[uk], labels[uk + 1]);
        changed = true;
      }
    }
  }
}

}  // namespace gadkit
