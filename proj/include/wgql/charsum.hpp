#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wgql/arith.hpp"

namespace wgql {

using cplx = std::complex<double>;

inline constexpr u64 kMaxCharacterModulus = 100'000;

/// e(t) = exp(2 pi i t).
cplx unit_root(double t);
/// e(num / den) with num reduced exactly before the division.
cplx unit_root(u64 num, u64 den);

/// A Dirichlet character realized as an explicit value table over all
/// residues mod q (zero off the units).
struct DirichletCharacter {
  u64 modulus = 1;
  std::vector<cplx> values;
  bool is_principal = true;
  u64 conductor = 1;
  bool is_primitive = true;

  cplx operator()(i64 n) const;
  DirichletCharacter conj() const;
};

DirichletCharacter principal_character(u64 q);

/// The same character regarded modulo a multiple q of its modulus.
DirichletCharacter induce(const DirichletCharacter& chi, u64 q);

/// One cyclic factor of the unit group mod q, lifted through CRT so that the
/// generator is 1 modulo every other prime-power component.
struct CyclicFactor {
  u64 prime;
  u64 prime_power;  // modulus of the component this factor lives in
  u64 generator;    // residue mod q
  u64 order;
};

/// All phi(q) characters mod q. Characters are described by exponent vectors
/// over the cyclic factors and materialized on demand, so the table costs
/// O(q) memory plus O(phi(q)) exponent vectors.
class CharacterTable {
 public:
  explicit CharacterTable(u64 q);

  u64 modulus() const { return modulus_; }
  std::size_t size() const { return conductors_.size(); }
  std::span<const CyclicFactor> factors() const { return factors_; }

  /// Characters are ordered lexicographically by exponent vector; index 0 is
  /// the principal character.
  DirichletCharacter character(std::size_t index) const;
  std::span<const unsigned> exponents(std::size_t index) const;
  u64 conductor(std::size_t index) const { return conductors_[index]; }
  bool is_primitive(std::size_t index) const { return conductors_[index] == modulus_; }
  std::optional<std::size_t> first_primitive() const;

 private:
  u64 modulus_;
  u64 phase_denominator_ = 1;  // lcm of the factor orders
  std::vector<CyclicFactor> factors_;
  // discrete_logs_[i * factors + j]: log of residue i w.r.t. factor j
  std::vector<std::uint32_t> discrete_logs_;
  std::vector<char> is_unit_;
  std::vector<unsigned> exponents_;
  std::vector<u64> conductors_;
};

CharacterTable character_group(u64 q);

/// C_k(a, q) = sum over units l mod q of e(a l^k / q).
cplx ck_sum(unsigned k, i64 a, u64 q);
/// C_k(a, chi) = sum_{l=1}^{q} chi(l) e(a l^k / q).
cplx ck_sum_twisted(unsigned k, i64 a, const DirichletCharacter& chi);

/// C_k(h, chi) for every h in [0, q); entries with gcd(h, q) > 1 are left at
/// zero. Uses C_k(h u^k, chi) = conj(chi(u)) C_k(h, chi) so that only one
/// direct summation per coset of the k-th power residues is needed.
std::vector<cplx> complete_sums_on_units(unsigned k, const DirichletCharacter& chi);

/// Z(q, chi_2, ..., chi_5) = sum* over h mod q of e(-hN/q) prod_k C_k(h, chi_k).
cplx z_sum(u64 q, std::span<const DirichletCharacter, 4> chis, i64 N);

/// sum_{q <= P, r | q} |Z(q, chi_0 chi_1, .., chi_0 chi_4)| / phi(q)^4 with
/// chi_i the first primitive character mod r_i; nullopt if some r_i has no
/// primitive character.
std::optional<double> twisted_z_profile(std::array<u64, 4> moduli, u64 P, i64 N);

}  // namespace wgql
