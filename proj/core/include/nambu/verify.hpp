#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nambu/polynomial.hpp"
#include "nambu/report.hpp"
#include "nambu/tensor.hpp"

namespace nambu {

// ---------------------------------------------------------------------------
// Nambu tensor constraints (rank 3).
//
// The algebraic constraint S(n,m,i,j,k,p) =
//   l_nij l_mkp + l_njk l_mip + l_nki l_mjp + l_mij l_nkp + l_mjk l_nip + l_mki l_njp
// is symmetric under n <-> m and totally antisymmetric in (i,j,k). The pruned
// enumeration visits n <= m, i < j < k, all p; every other tuple is a signed
// image of one of these. The lexicographically smallest violating tuple is
// always a pruned representative, so the reported witness does not depend on
// the pruning.
//
// The differential constraint D(j,k,m,n,p) =
//   l_ijk d_i l_mnp - l_inp d_i l_mjk - l_ipm d_i l_njk - l_imn d_i l_pjk
// (summed over i) is antisymmetric in (j,k) and totally antisymmetric in
// (m,n,p); the pruned enumeration visits j < k, m < n < p.
// ---------------------------------------------------------------------------

struct Violation {
  IndexTuple tuple;  // 0-based
  Polynomial residual;
};

Polynomial algebraic_residual(const AntisymTensor& t, std::span<const std::size_t> nmijkp);
Polynomial differential_residual(const AntisymTensor& t, std::span<const std::size_t> jkmnp);

/// Every violating pruned representative, in lexicographic order.
std::vector<Violation> algebraic_violations(const AntisymTensor& t);
std::vector<Violation> differential_violations(const AntisymTensor& t);

/// Expands pruned representatives to all (n,m,i,j,k,p) tuples they stand for,
/// with signed residuals, sorted lexicographically.
std::vector<Violation> expand_algebraic_orbits(std::span<const Violation> representatives);

VerificationReport check_cond_algebraic(const AntisymTensor& t);
VerificationReport check_cond_differential(const AntisymTensor& t);

// ---------------------------------------------------------------------------
// Poisson matrices.
// ---------------------------------------------------------------------------

/// J_il d_l J_jk + J_kl d_l J_ij + J_jl d_l J_ki for one (i,j,k).
Polynomial jacobi_residual(const PolyMatrix& j, std::size_t i, std::size_t jj, std::size_t k,
                           std::size_t geometric_dimension);

/// Jacobi condition over all i < j < k (the expression is totally
/// antisymmetric, so this covers every triple).
VerificationReport check_jacobi(const AntisymTensor& poisson);

/// Passes iff every component of J grad C vanishes.
VerificationReport check_casimir(const AntisymTensor& poisson, const Polynomial& candidate);

/// Jacobi condition for the pencil J1 + t J2, t a fresh variable appended to
/// the ring with zero derivative along the phase space.
VerificationReport check_compatibility(const AntisymTensor& j1, const AntisymTensor& j2);

// ---------------------------------------------------------------------------
// Generic rank and N = K + 2 admissibility.
// ---------------------------------------------------------------------------

/// Sample coordinates are integers drawn uniformly from this range.
inline constexpr int kSampleMin = -9;
inline constexpr int kSampleMax = 9;
inline constexpr std::size_t kDefaultSamples = 8;

/// Exact rank of a rational matrix by fraction-free (Bareiss) elimination.
std::size_t exact_rank(const std::vector<std::vector<Rational>>& m);

AdmissibilityReport generic_rank(const AntisymTensor& poisson,
                                 std::size_t samples = kDefaultSamples, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Fundamental identity, for brackets of any rank r:
//   {{A, B, C_1..}, D, E_1..} = sum over slots of {.., {X, D, E_1..}, ..}
// The first group holds r observables (A, B, C_1 ... C_{r-2}), the second
// r-1 (D, E_1 ... E_{r-2}).
// ---------------------------------------------------------------------------

struct NamedPolynomial {
  std::string name;
  Polynomial poly;
};

struct FiSelection {
  std::vector<std::size_t> first;   // r indices into the observable list
  std::vector<std::size_t> second;  // r - 1 indices
};

Polynomial fi_residual(const AntisymTensor& t, std::span<const Polynomial> first,
                       std::span<const Polynomial> second);

/// Exhaustive mode. The residual is multilinear and antisymmetric within each
/// group, so only strictly increasing selections inside each group are
/// visited; any other selection is zero or a signed copy of one visited.
/// Requires at least 2r - 1 observables.
VerificationReport check_fundamental_identity(const AntisymTensor& t,
                                              std::span<const NamedPolynomial> observables);

/// Designated mode: only the given selections.
VerificationReport check_fundamental_identity(const AntisymTensor& t,
                                              std::span<const NamedPolynomial> observables,
                                              std::span<const FiSelection> selections);

/// Nonconstant monomials of total degree 1..max_degree, in graded-lex order.
std::vector<NamedPolynomial> monomial_basis(std::size_t dimension, std::uint32_t max_degree,
                                            std::span<const std::string> names);

}  // namespace nambu
