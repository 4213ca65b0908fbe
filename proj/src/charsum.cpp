#include "wgql/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wgql/summation.hpp"

namespace wgql {
namespace {

void check_k(unsigned k) {
  if (k < 2 || k > 5) throw std::domain_error("exponent k must lie in {2,3,4,5}, got " + std::to_string(k));
}

u64 reduce(i64 a, u64 q) {
  const i64 m = static_cast<i64>(q);
  const i64 r = a % m;
  return static_cast<u64>(r < 0 ? r + m : r);
}

// Exhaustive search for an element of order phi(p^a) modulo p^a, p odd.
u64 primitive_root(u64 p, u64 pa, u64 phi) {
  const auto phi_primes = factorize(phi).factors;
  for (u64 g = 2; g < pa; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (const auto& f : phi_primes)
      if (pow_mod(g, phi / f.prime, pa) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  if (pa == 3) return 2;
  throw std::logic_error("primitive_root: none found");
}

// x = r mod m, x = 1 mod (q / m)
u64 crt_lift(u64 r, u64 m, u64 q) {
  const u64 rest = q / m;
  if (rest == 1) return r % q;
  // x = 1 + rest * t with 1 + rest * t = r (mod m)
  const u64 inv = pow_mod(rest % m, euler_phi(m) - 1, m);
  const u64 t = mul_mod((r % m + m - 1) % m, inv, m);
  return (1 + rest * t) % q;
}

}  // namespace

cplx unit_root(double t) {
  const double frac = t - std::floor(t);
  const double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

cplx unit_root(u64 num, u64 den) {
  num %= den;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

cplx DirichletCharacter::operator()(i64 n) const { return values[reduce(n, modulus)]; }

DirichletCharacter DirichletCharacter::conj() const {
  DirichletCharacter out = *this;
  for (auto& v : out.values) v = std::conj(v);
  return out;
}

DirichletCharacter principal_character(u64 q) {
  if (q == 0) throw std::domain_error("principal_character: q = 0");
  DirichletCharacter chi;
  chi.modulus = q;
  chi.values.assign(q, cplx{});
  for (u64 l = 0; l < q; ++l)
    if (std::gcd(l, q) == 1) chi.values[l] = 1.0;
  chi.is_principal = true;
  chi.conductor = 1;
  chi.is_primitive = q == 1;
  return chi;
}

DirichletCharacter induce(const DirichletCharacter& chi, u64 q) {
  if (q == 0 || q % chi.modulus != 0) throw std::domain_error("induce: target modulus is not a multiple");
  DirichletCharacter out;
  out.modulus = q;
  out.values.assign(q, cplx{});
  for (u64 l = 0; l < q; ++l)
    if (std::gcd(l, q) == 1) out.values[l] = chi.values[l % chi.modulus];
  out.is_principal = chi.is_principal;
  out.conductor = chi.conductor;
  out.is_primitive = chi.conductor == q;
  return out;
}

CharacterTable::CharacterTable(u64 q) : modulus_(q) {
  if (q == 0) throw std::domain_error("character_group: q = 0");
  if (q > kMaxCharacterModulus) throw std::range_error("character_group: q exceeds 1e5");

  // Unit group mod q as a product of cyclic factors, one or two per prime power.
  struct Component {
    u64 prime, power, exponent;
    std::size_t first_factor, factor_count;
  };
  std::vector<Component> components;
  for (const auto& [p, e] : factorize(q).factors) {
    const u64 pa = checked_pow(p, e);
    Component c{p, pa, e, factors_.size(), 0};
    if (p == 2) {
      if (e >= 2) factors_.push_back({2, pa, crt_lift(pa - 1, pa, q), 2});
      if (e >= 3) factors_.push_back({2, pa, crt_lift(5, pa, q), pa / 4});
    } else {
      const u64 phi = pa / p * (p - 1);
      factors_.push_back({p, pa, crt_lift(primitive_root(p, pa, phi), pa, q), phi});
    }
    c.factor_count = factors_.size() - c.first_factor;
    components.push_back(c);
  }

  const std::size_t nf = factors_.size();
  phase_denominator_ = 1;
  for (const auto& f : factors_) phase_denominator_ = std::lcm(phase_denominator_, f.order);

  // Discrete logs per component, then spread over residues mod q.
  is_unit_.assign(q, 0);
  discrete_logs_.assign(q * nf, 0);
  for (const auto& c : components) {
    std::vector<std::uint32_t> log_a(c.power, 0), log_b(c.power, 0);
    if (c.prime == 2) {
      if (c.factor_count == 2) {
        u64 v = 1;
        for (u64 t = 0; t < c.power / 4; ++t) {
          log_a[v] = 0, log_b[v] = static_cast<std::uint32_t>(t);
          log_a[c.power - v] = 1, log_b[c.power - v] = static_cast<std::uint32_t>(t);
          v = v * 5 % c.power;
        }
      } else if (c.factor_count == 1) {
        log_a[1] = 0;
        log_a[3] = 1;
      }
    } else {
      const u64 g = factors_[c.first_factor].generator % c.power;
      u64 v = 1;
      for (u64 t = 0; t < factors_[c.first_factor].order; ++t) {
        log_a[v] = static_cast<std::uint32_t>(t);
        v = mul_mod(v, g, c.power);
      }
    }
    for (u64 r = 0; r < q; ++r) {
      const u64 s = r % c.power;
      if (c.factor_count >= 1) discrete_logs_[r * nf + c.first_factor] = log_a[s];
      if (c.factor_count == 2) discrete_logs_[r * nf + c.first_factor + 1] = log_b[s];
    }
  }
  for (u64 r = 0; r < q; ++r) is_unit_[r] = std::gcd(r, q) == 1;

  // Enumerate exponent vectors lexicographically and attach conductors.
  std::size_t count = 1;
  for (const auto& f : factors_) count *= f.order;
  exponents_.assign(count * nf, 0);
  conductors_.assign(count, 1);
  std::vector<unsigned> e(nf, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::copy(e.begin(), e.end(), exponents_.begin() + static_cast<std::ptrdiff_t>(idx * nf));
    u64 conductor = 1;
    for (const auto& c : components) {
      if (c.factor_count == 0) continue;
      if (c.prime == 2) {
        const unsigned sign = e[c.first_factor];
        const u64 t = c.factor_count == 2 ? e[c.first_factor + 1] : 0;
        if (t == 0) {
          conductor *= sign ? 4 : 1;
        } else {
          // trivial on {u = 1 mod 2^b} (b >= 2) iff 2^(a-b) divides t
          u64 b = 2;
          while ((t % (c.power >> b)) != 0) ++b;
          conductor *= u64{1} << b;
        }
      } else {
        const u64 t = e[c.first_factor];
        if (t == 0) continue;
        // trivial on {u = 1 mod p^b} (b >= 1) iff p^(a-b) divides t
        u64 pb = c.prime;
        while (t % (c.power / pb) != 0) pb *= c.prime;
        conductor *= pb;
      }
    }
    conductors_[idx] = conductor;
    for (std::size_t j = nf; j-- > 0;) {
      if (++e[j] < factors_[j].order) break;
      e[j] = 0;
    }
  }
}

std::span<const unsigned> CharacterTable::exponents(std::size_t index) const {
  const std::size_t nf = factors_.size();
  return {exponents_.data() + index * nf, nf};
}

DirichletCharacter CharacterTable::character(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("CharacterTable::character");
  const std::size_t nf = factors_.size();
  const auto e = exponents(index);
  std::vector<u64> weight(nf);
  for (std::size_t j = 0; j < nf; ++j) weight[j] = e[j] * (phase_denominator_ / factors_[j].order);

  std::vector<cplx> roots(phase_denominator_);
  for (u64 t = 0; t < phase_denominator_; ++t) roots[t] = unit_root(t, phase_denominator_);

  DirichletCharacter chi;
  chi.modulus = modulus_;
  chi.values.assign(modulus_, cplx{});
  for (u64 r = 0; r < modulus_; ++r) {
    if (!is_unit_[r]) continue;
    u64 phase = 0;
    for (std::size_t j = 0; j < nf; ++j) phase += weight[j] * discrete_logs_[r * nf + j];
    chi.values[r] = roots[phase % phase_denominator_];
  }
  chi.is_principal = index == 0;
  chi.conductor = conductors_[index];
  chi.is_primitive = chi.conductor == modulus_;
  return chi;
}

std::optional<std::size_t> CharacterTable::first_primitive() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (is_primitive(i)) return i;
  return std::nullopt;
}

CharacterTable character_group(u64 q) { return CharacterTable(q); }

cplx ck_sum(unsigned k, i64 a, u64 q) {
  check_k(k);
  if (q == 0) throw std::domain_error("ck_sum: q = 0");
  const u64 ar = reduce(a, q);
  CompensatedComplexSum sum;
  for (u64 l = 1; l <= q; ++l) {
    if (std::gcd(l, q) != 1) continue;
    sum += unit_root(mul_mod(ar, pow_mod(l, k, q), q), q);
  }
  return sum.value();
}

cplx ck_sum_twisted(unsigned k, i64 a, const DirichletCharacter& chi) {
  check_k(k);
  const u64 q = chi.modulus;
  const u64 ar = reduce(a, q);
  CompensatedComplexSum sum;
  for (u64 l = 1; l <= q; ++l) {
    const cplx c = chi.values[l % q];
    if (c == cplx{}) continue;
    sum += c * unit_root(mul_mod(ar, pow_mod(l, k, q), q), q);
  }
  return sum.value();
}

std::vector<cplx> complete_sums_on_units(unsigned k, const DirichletCharacter& chi) {
  check_k(k);
  const u64 q = chi.modulus;
  std::vector<cplx> out(q, cplx{});
  if (chi.is_principal && std::gcd<u64>(k, euler_phi(q)) == 1) {
    // l -> l^k permutes the units, leaving the Ramanujan sum c_q(h) = mu(q).
    const double mu = moebius(q);
    for (u64 h = 0; h < q; ++h)
      if (std::gcd(h, q) == 1) out[h] = mu;
    return out;
  }
  std::vector<u64> powers(q);
  std::vector<u64> units;
  for (u64 l = 0; l < q; ++l) {
    powers[l] = pow_mod(l, k, q);
    if (std::gcd(l, q) == 1) units.push_back(l);
  }
  std::vector<cplx> roots(q);
  for (u64 t = 0; t < q; ++t) roots[t] = unit_root(t, q);

  std::vector<char> known(q, 0);
  for (u64 h : units) {
    if (known[h]) continue;
    CompensatedComplexSum direct;
    for (u64 l : units) direct += chi.values[l] * roots[mul_mod(h, powers[l], q)];
    const cplx value = direct.value();
    for (u64 u : units) {
      const u64 target = mul_mod(h, powers[u], q);
      if (known[target]) continue;
      out[target] = std::conj(chi.values[u]) * value;
      known[target] = 1;
    }
  }
  return out;
}

cplx z_sum(u64 q, std::span<const DirichletCharacter, 4> chis, i64 N) {
  for (const auto& chi : chis)
    if (chi.modulus != q) throw std::domain_error("z_sum: character modulus does not match q");
  std::array<std::vector<cplx>, 4> sums;
  for (unsigned k = 2; k <= 5; ++k) sums[k - 2] = complete_sums_on_units(k, chis[k - 2]);
  const u64 n = reduce(N, q);
  CompensatedComplexSum total;
  for (u64 h = 0; h < q; ++h) {
    if (std::gcd(h, q) != 1) continue;
    cplx term = unit_root(q - mul_mod(h, n, q), q);
    for (const auto& s : sums) term *= s[h];
    total += term;
  }
  return total.value();
}

std::optional<double> twisted_z_profile(std::array<u64, 4> moduli, u64 P, i64 N) {
  if (P > 1000) throw std::range_error("twisted_z_profile: P exceeds 1e3");
  std::array<DirichletCharacter, 4> base;
  for (std::size_t i = 0; i < 4; ++i) {
    if (moduli[i] == 0 || moduli[i] > P) throw std::domain_error("twisted_z_profile: modulus outside [1, P]");
    const CharacterTable table(moduli[i]);
    const auto idx = table.first_primitive();
    if (!idx) return std::nullopt;
    base[i] = table.character(*idx);
  }
  const u64 r = lcm_list(moduli);
  CompensatedSum total;
  for (u64 q = r; q <= P; q += r) {
    std::array<DirichletCharacter, 4> chis;
    for (std::size_t i = 0; i < 4; ++i) chis[i] = induce(base[i], q);
    const double phi = static_cast<double>(euler_phi(q));
    total += std::abs(z_sum(q, chis, N)) / (phi * phi * phi * phi);
  }
  return total.value();
}

}  // namespace wgql
