#include "caplat/capacity.hpp"

#include <algorithm>
#include <stdexcept>

#include "caplat/error.hpp"

namespace caplat {

LatticeFn::LatticeFn(LatticePtr lattice, std::vector<Rational> values)
    : lattice_(std::move(lattice)), values_(std::move(values)) {
  if (values_.size() != lattice_->size()) {
    throw Error(Errc::DimensionMismatch,
                "function has " + std::to_string(values_.size()) +
                    " values for a lattice of " +
                    std::to_string(lattice_->size()));
  }
}

LatticeFn::LatticeFn(LatticePtr lattice)
    : lattice_(std::move(lattice)), values_(lattice_->size()) {}

LatticeFn LatticeFn::from_map(LatticePtr lattice,
                              const std::map<std::string, Rational>& values) {
  LatticeFn fn(std::move(lattice));
  for (const auto& [name, value] : values) {
    fn.values_[fn.lattice_->index(name)] = value;
  }
  return fn;
}

LatticeFn LatticeFn::rebind(LatticePtr other) const {
  return LatticeFn(std::move(other), values_);
}

LatticeFn& LatticeFn::operator+=(const LatticeFn& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other[i];
  return *this;
}

LatticeFn& LatticeFn::operator-=(const LatticeFn& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other[i];
  return *this;
}

LatticeFn operator+(LatticeFn a, const LatticeFn& b) { return a += b; }
LatticeFn operator-(LatticeFn a, const LatticeFn& b) { return a -= b; }

bool is_monotone(const LatticeFn& phi) {
  for (const auto& [lo, hi] : phi.lattice().covers()) {
    if (phi[lo] > phi[hi]) return false;
  }
  return true;
}

bool is_nonnegative(const LatticeFn& phi) {
  return std::all_of(phi.values().begin(), phi.values().end(),
                     [](const Rational& v) { return sgn(v) >= 0; });
}

bool is_capacity(const LatticeFn& phi) {
  const Lattice& L = phi.lattice();
  return phi[L.bottom()] == 0 && phi[L.top()] == 1 && is_monotone(phi);
}

LatticeFn mobius_inverse(const LatticeFn& phi) {
  const Lattice& L = phi.lattice();
  LatticeFn f(phi.lattice_ptr());
  for (Element x = 0; x < L.size(); ++x) {
    Rational sum;
    for (Element y = 0; y < L.size(); ++y) {
      if (L.leq(y, x) && !is_zero(phi[y])) sum += phi[y] * L.mobius(y, x);
    }
    f[x] = sum;
  }
  return f;
}

LatticeFn cdf_from_mass(const LatticeFn& mass) {
  const Lattice& L = mass.lattice();
  LatticeFn phi(mass.lattice_ptr());
  for (Element x = 0; x < L.size(); ++x) {
    Rational sum;
    for (Element y = 0; y < L.size(); ++y) {
      if (L.leq(y, x)) sum += mass[y];
    }
    phi[x] = sum;
  }
  return phi;
}

namespace {

// Reverse (Moebius) inversion along the dual order:
// g(x) = sum_{y >= x} phi(y) mu(x, y).
std::vector<Rational> dual_mobius_values(const LatticeFn& phi) {
  const Lattice& L = phi.lattice();
  std::vector<Rational> out(L.size());
  for (Element x = 0; x < L.size(); ++x) {
    for (Element y = 0; y < L.size(); ++y) {
      if (L.leq(x, y) && !is_zero(phi[y])) out[x] += phi[y] * L.mobius(x, y);
    }
  }
  return out;
}

// sum_{A' subset A} (-1)^{|A'|} phi(op(A') op b), where op is meet or join.
template <class Op>
Rational signed_expansion(const LatticeFn& phi, const std::vector<Element>& a,
                          Element b, Op op) {
  const std::size_t k = a.size();
  if (k >= 31) {
    throw Error(Errc::CapExceeded,
                "difference expansion over " + std::to_string(k) +
                    " generators");
  }
  // Gray-code style accumulation: the bound of each mask is built from
  // the mask without its lowest bit.
  std::vector<Element> bound(std::size_t{1} << k);
  bound[0] = b;
  Rational total = phi[b];
  for (std::size_t mask = 1; mask < bound.size(); ++mask) {
    const std::size_t low = mask & (~mask + 1);
    const auto bit = static_cast<std::size_t>(__builtin_ctzll(low));
    bound[mask] = op(bound[mask ^ low], a[bit]);
    if (__builtin_popcountll(mask) % 2 == 0) {
      total += phi[bound[mask]];
    } else {
      total -= phi[bound[mask]];
    }
  }
  return total;
}

}  // namespace

CapacityClass classify(const LatticeFn& phi) {
  const Lattice& L = phi.lattice();
  CapacityClass out;
  out.is_monotone = is_monotone(phi);
  out.is_nonnegative = is_nonnegative(phi);
  out.is_capacity =
      out.is_monotone && phi[L.bottom()] == 0 && phi[L.top()] == 1;
  out.bottom_nonnegative = sgn(phi[L.bottom()]) >= 0;

  const LatticeFn f = mobius_inverse(phi);
  out.is_completely_monotone = true;
  for (Element x = 0; x < L.size(); ++x) {
    if (x != L.bottom() && sgn(f[x]) < 0) out.is_completely_monotone = false;
  }

  // 1 - phi on L* has the same Moebius values as -phi away from the bottom
  // of L* (the top of L).
  const std::vector<Rational> g = dual_mobius_values(phi);
  out.is_completely_alternating = true;
  for (Element x = 0; x < L.size(); ++x) {
    if (x != L.top() && sgn(g[x]) > 0) out.is_completely_alternating = false;
  }
  return out;
}

Subset maximal_meet_antichain(const Lattice& L, const Subset& a, Element b) {
  for (Element e : a) {
    if (L.leq(b, e)) {
      throw Error(Errc::Unreducible,
                  L.name(b) + " lies below generator " + L.name(e));
    }
  }
  std::vector<Element> keep;
  for (Element e : a) {
    const Element m = L.meet(e, b);
    bool dropped = false;
    for (Element other : a) {
      const Element mo = L.meet(other, b);
      if (L.less(m, mo) || (mo == m && other < e)) {
        dropped = true;
        break;
      }
    }
    if (!dropped) keep.push_back(e);
  }
  return Subset(std::move(keep));
}

Rational nabla_expansion(const LatticeFn& phi, const Subset& a, Element b) {
  const Lattice& L = phi.lattice();
  return signed_expansion(phi, a.items(), b, [&L](Element x, Element y) {
    return L.meet(x, y);
  });
}

Rational nabla(const LatticeFn& phi, const Subset& a, Element b) {
  if (a.empty()) throw Error(Errc::EmptyGenerator, "nabla over an empty set");
  const Lattice& L = phi.lattice();
  for (Element e : a) {
    if (L.leq(b, e)) return Rational(0);
  }
  return nabla_expansion(phi, maximal_meet_antichain(L, a, b), b);
}

Subset pi_set(const Lattice& L, const Subset& a, Element b) {
  std::vector<Element> out;
  for (Element x = 0; x < L.size(); ++x) {
    if (!L.leq(x, b)) continue;
    const bool below_some =
        std::any_of(a.begin(), a.end(), [&](Element e) { return L.leq(x, e); });
    if (!below_some) out.push_back(x);
  }
  return Subset(std::move(out));
}

bool support_check(const LatticeFn& phi, const Subset& down_set) {
  const Lattice& L = phi.lattice();
  if (!L.is_down_set(down_set)) {
    throw Error(Errc::NotADownSet, "{" + L.format(down_set) + "}");
  }
  const LatticeFn f = mobius_inverse(phi);
  bool by_inverse = true;
  bool by_nabla = true;
  for (Element b = 0; b < L.size(); ++b) {
    if (down_set.contains(b)) continue;
    if (!is_zero(f[b])) by_inverse = false;
    const Rational d =
        down_set.empty() ? phi[b] : nabla(phi, L.maximal(down_set), b);
    if (!is_zero(d)) by_nabla = false;
  }
  if (by_inverse != by_nabla) {
    throw std::logic_error("support_check: Moebius and nabla criteria differ");
  }
  return by_inverse;
}

LatticeFn dual_capacity(const LatticeFn& phi) {
  if (!is_capacity(phi)) {
    throw Error(Errc::NotACapacity, "dual capacity needs a capacity");
  }
  LatticeFn out = phi.rebind(share(phi.lattice().dual()));
  for (Element x = 0; x < out.size(); ++x) out[x] = 1 - phi[x];
  return out;
}

Rational delta(const LatticeFn& phi, const Subset& b_set, Element b) {
  if (b_set.empty()) {
    throw Error(Errc::EmptyGenerator, "delta over an empty set");
  }
  const Lattice& L = phi.lattice();
  for (Element e : b_set) {
    if (L.leq(e, b)) return Rational(0);
  }
  // Reduce to the generators whose joins with b are minimal and distinct.
  std::vector<Element> keep;
  for (Element e : b_set) {
    const Element j = L.join(e, b);
    bool dropped = false;
    for (Element other : b_set) {
      const Element jo = L.join(other, b);
      if (L.less(jo, j) || (jo == j && other < e)) {
        dropped = true;
        break;
      }
    }
    if (!dropped) keep.push_back(e);
  }
  return signed_expansion(phi, keep, b,
                          [&L](Element x, Element y) { return L.join(x, y); });
}

}  // namespace caplat
