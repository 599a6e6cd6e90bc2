#include "toricsr/condition_m.hpp"

#include <algorithm>
#include <functional>

namespace toricsr {

namespace {

struct Context {
  NormalFan fan;
  DivisorClassGroup group;
  std::vector<Int> weight; // Minkowski weights, positive
  Int target;              // weight of [D_P]
};

Context make_context(const LatticePolytope &P) {
  if (!P.is_full_dimensional())
    throw PreconditionViolation("condition (M) needs a full-dimensional polytope");
  Context c;
  c.fan = normal_fan(P);
  c.group = class_group(c.fan);
  c.weight = minkowski_weights(P);
  c.target = 0;
  IntVector balance = zero_vector(c.fan.dim);
  for (std::size_t r = 0; r < c.fan.rays.size(); ++r) {
    c.target -= c.weight[r] * c.fan.ord[r];
    balance = add(balance, scale(c.fan.rays[r], c.weight[r]));
  }
  if (!is_zero(balance))
    throw InternalConsistencyError("Minkowski weights do not balance");
  return c;
}

void add_into(const DivisorClassGroup &G, ClassElement &acc, const ClassElement &x, int sign) {
  for (std::size_t i = 0; i < acc.free.size(); ++i)
    acc.free[i] += sign * x.free[i];
  for (std::size_t i = 0; i < acc.torsion.size(); ++i) {
    acc.torsion[i] += sign * x.torsion[i];
    if (acc.torsion[i] >= G.torsion[i])
      acc.torsion[i] -= G.torsion[i];
    else if (acc.torsion[i] < 0)
      acc.torsion[i] += G.torsion[i];
  }
}

// Square-free monomials through ray rho in the class of D_P, by subset search pruned on the
// weight, which is linear on classes and positive on every ray.
std::optional<std::vector<Int>> reduced_witness(const Context &c, std::size_t rho) {
  const std::size_t R = c.fan.rays.size();
  std::vector<std::size_t> order;
  for (std::size_t r = 0; r < R; ++r)
    if (r != rho)
      order.push_back(r);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return c.weight[a] > c.weight[b]; });
  std::vector<Int> suffix(order.size() + 1, 0);
  for (std::size_t i = order.size(); i-- > 0;)
    suffix[i] = suffix[i + 1] + c.weight[order[i]];

  std::vector<Int> w(R, 0);
  w[rho] = 1;
  ClassElement acc = c.group.ray_degrees[rho];
  Int phi = c.weight[rho];
  std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
    if (phi == c.target)
      return acc == c.group.ample;
    if (i == order.size() || phi + suffix[i] < c.target)
      return false;
    const std::size_t r = order[i];
    if (phi + c.weight[r] <= c.target) {
      w[r] = 1;
      phi += c.weight[r];
      add_into(c.group, acc, c.group.ray_degrees[r], 1);
      if (dfs(i + 1))
        return true;
      add_into(c.group, acc, c.group.ray_degrees[r], -1);
      phi -= c.weight[r];
      w[r] = 0;
    }
    return dfs(i + 1);
  };
  if (dfs(0))
    return w;
  return std::nullopt;
}

std::vector<Int> exponents_at(const NormalFan &F, const TorusDivisor &D, const IntVector &m) {
  std::vector<Int> e;
  for (std::size_t r = 0; r < F.rays.size(); ++r)
    e.push_back(dot(m, F.rays[r]) + D[r]);
  return e;
}

std::optional<std::vector<Int>> unrestricted_witness(const Context &c, std::size_t rho) {
  TorusDivisor D = polytope_divisor(c.fan);
  D[rho] -= 1;
  auto pts = divisor_polytope(c.fan, D).lattice_points();
  if (pts.empty())
    return std::nullopt;
  std::vector<Int> w = exponents_at(c.fan, D, pts.front());
  w[rho] += 1;
  return w;
}

} // namespace

ConditionMReport check_condition_m(const LatticePolytope &P, ConditionMMode mode, Exec exec) {
  Context c = make_context(P);
  const long R = static_cast<long>(c.fan.rays.size());
  ConditionMReport rep;
  rep.mode = mode;
  rep.witnesses.resize(c.fan.rays.size());
  auto work = [&](long r) {
    auto rho = static_cast<std::size_t>(r);
    rep.witnesses[rho] =
        mode == ConditionMMode::Reduced ? reduced_witness(c, rho) : unrestricted_witness(c, rho);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long r = 0; r < R; ++r)
      work(r);
  } else {
    for (long r = 0; r < R; ++r)
      work(r);
  }
  rep.holds = std::all_of(rep.witnesses.begin(), rep.witnesses.end(),
                          [](const auto &w) { return w.has_value(); });
  return rep;
}

bool verify_witness(const LatticePolytope &P, std::size_t rho, const std::vector<Int> &w,
                    ConditionMMode mode) {
  NormalFan F = normal_fan(P);
  if (rho >= F.rays.size() || w.size() != F.rays.size() || w[rho] < 1)
    return false;
  for (const Int &x : w)
    if (x < 0 || (mode == ConditionMMode::Reduced && x > 1))
      return false;
  DivisorClassGroup G = class_group(F);
  return divisor_class(G, w) == G.ample;
}

std::vector<Section> sections_of_class(const LatticePolytope &P, const TorusDivisor &D) {
  NormalFan F = normal_fan(P);
  std::vector<Section> out;
  for (const IntVector &m : divisor_polytope(F, D).lattice_points())
    out.push_back(Section{m, exponents_at(F, D, m)});
  std::sort(out.begin(), out.end(),
            [](const Section &a, const Section &b) { return lex_less(a.point, b.point); });
  return out;
}

bool cross_check_unrestricted(const LatticePolytope &P, std::size_t rho, std::size_t node_limit) {
  Context c = make_context(P);
  const std::size_t R = c.fan.rays.size();
  if (rho >= R)
    throw PreconditionViolation("ray index out of range");
  const bool by_shift = facet_shift(P, rho).has_lattice_point();

  // Exponent vectors with weight equal to the target; each coordinate is bounded by the weight.
  std::vector<Int> w(R, 0);
  w[rho] = 1;
  ClassElement acc = c.group.ray_degrees[rho];
  Int phi = c.weight[rho];
  std::size_t nodes = 0;
  std::function<bool(std::size_t)> dfs = [&](std::size_t r) -> bool {
    if (++nodes > node_limit)
      throw ResourceLimitExceeded("exponent search exceeded " + std::to_string(node_limit) +
                                  " nodes");
    if (phi == c.target)
      return acc == c.group.ample;
    if (r == R)
      return false;
    int added = 0;
    bool found = false;
    for (;;) {
      if (dfs(r + 1)) {
        found = true;
        break;
      }
      if (phi + c.weight[r] > c.target)
        break;
      phi += c.weight[r];
      add_into(c.group, acc, c.group.ray_degrees[r], 1);
      ++w[r];
      ++added;
    }
    if (!found) {
      for (; added > 0; --added) {
        phi -= c.weight[r];
        add_into(c.group, acc, c.group.ray_degrees[r], -1);
        --w[r];
      }
    }
    return found;
  };
  const bool by_exponents = dfs(0);
  if (by_exponents != by_shift)
    throw InternalConsistencyError("unrestricted condition (M) routes disagree at ray " +
                                   std::to_string(rho));
  return by_shift;
}

bool is_provably_rational(const LatticePolytope &P) {
  if (P.dim() <= 1)
    return true;
  LatticePolytope Q = P.is_full_dimensional() ? P : normalize_full_dimensional(P).polytope;
  if (lattice_width(Q).width == 1)
    return true;
  return Q.dim() <= 3 && fine_interior(Q).empty();
}

std::string to_string(VariationTag t) {
  switch (t) {
  case VariationTag::None:
    return "None";
  case VariationTag::UniqueInteriorPoint:
    return "UniqueInteriorPoint";
  case VariationTag::HasInteriorPoints:
    return "HasInteriorPoints";
  case VariationTag::ConditionM:
    return "ConditionM";
  case VariationTag::SmoothWithUnobstructedShifts:
    return "SmoothWithUnobstructedShifts";
  }
  return "None";
}

VariationCertificate strong_variation_certificate(const LatticePolytope &P, Exec exec) {
  VariationCertificate cert;
  if (is_provably_rational(P))
    return cert;
  LatticePolytope Q = P.is_full_dimensional() ? P : normalize_full_dimensional(P).polytope;
  const std::size_t interior = lattice_points(Q, true, kDefaultPointLimit, exec).size();
  if (interior == 1) {
    cert.tag = VariationTag::UniqueInteriorPoint;
    return cert;
  }
  if (interior > 1) {
    cert.tag = VariationTag::HasInteriorPoints;
    return cert;
  }
  ConditionMReport m = check_condition_m(Q, ConditionMMode::Reduced, exec);
  if (m.holds) {
    cert.tag = VariationTag::ConditionM;
    cert.condition_m = std::move(m);
    return cert;
  }
  if (is_smooth(Q).smooth) {
    std::vector<LatticePolytope> shifts;
    for (std::size_t r = 0; r < Q.chart_facets().size(); ++r) {
      auto s = facet_shift(Q, r).to_lattice_polytope();
      if (!s || !is_provably_rational(*s))
        return cert;
      shifts.push_back(std::move(*s));
    }
    cert.tag = VariationTag::SmoothWithUnobstructedShifts;
    cert.shifted_facets = std::move(shifts);
  }
  return cert;
}

} // namespace toricsr
