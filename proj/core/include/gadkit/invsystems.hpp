#pragma once

// Generalized additive decompositions f = sum_i omega_i l_i^{d-k_i}, their
// inverse systems and ranks.

#include <string>
#include <vector>

#include "gadkit/apolarity.hpp"
#include "gadkit/polycore.hpp"

namespace gadkit {

struct GADTerm {
  Poly omega;  // homogeneous of degree k in n+1 variables
  LinearForm ell;
  int k = 0;
};

struct GAD {
  int n = 0;  // number of affine variables; forms live in n+1 variables
  int d = 0;
  std::vector<GADTerm> terms;
};

/// Throws ContractError on structural violations: wrong variable counts,
/// deg(omega) != k, k > d, or two proportional supports.
void validate(const GAD& g);

/// Advisory findings that do not invalidate a GAD, currently "l_i divides
/// omega_i" detected numerically.
std::vector<std::string> gad_warnings(const GAD& g);

/// Write omega = sum_j omega_j(x_1..x_n) l^{k-j} and return
/// (1/d!) sum_j (d-j)! omega_j, an affine polynomial in n variables.
/// Requires l_0 != 0.
Poly omega_dlv(const Poly& omega, const LinearForm& ell, int d);

/// Dimension of the span of all partial derivatives of q (numerical rank,
/// tolerance 1e-10 relative to the largest singular value).
int inverse_system_dim(const Poly& q);

/// dim of the l-inverse system of omega, computed in coordinates where the
/// pivot coefficient of l is nonzero.
int ell_rank(const Poly& omega, const LinearForm& ell);

int gad_rank(const GAD& g);

/// Truncation to degree <= d of omega^{d,l,x}(z) e_xi(z) with l = x0 + (xi, x):
/// value(beta) = (omega^{d,l,x}(d/dx) x^beta)(xi).
DualSeries polyexp_truncated(const Poly& omega, std::span<const cplx> xi, int d);

/// sum_i omega_i l_i^{d-k_i}.
Poly reconstruct(const GAD& g);

}  // namespace gadkit
