#include "toricsr/hodge.hpp"
#include "toricsr/toric.hpp"

#include <algorithm>

namespace toricsr {

namespace {

struct Face {
  std::vector<std::size_t> verts; // sorted
  int dim;
  Int interior;
};

std::vector<Face> all_faces(const LatticePolytope &P, Exec exec) {
  const auto sets = P.face_sets();
  std::vector<Face> faces;
  for (std::size_t k = 0; k < sets.size(); ++k)
    for (const auto &s : sets[k])
      faces.push_back(Face{s, static_cast<int>(k), 0});
  auto count = [&](long i) {
    Face &f = faces[static_cast<std::size_t>(i)];
    std::vector<IntVector> pts;
    for (std::size_t v : f.verts)
      pts.push_back(P.vertices()[v]);
    f.interior = static_cast<long>(
        lattice_points(LatticePolytope::hull(pts), true, kDefaultPointLimit, Exec::Serial).size());
  };
  const long nf = static_cast<long>(faces.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < nf; ++i)
      count(i);
  } else {
    for (long i = 0; i < nf; ++i)
      count(i);
  }
  return faces;
}

int sign(long k) { return k % 2 == 0 ? 1 : -1; }

} // namespace

Int e_p0_open(const LatticePolytope &P, int p, Exec exec) {
  if (p < 0 || p + 1 > P.dim())
    throw PreconditionViolation("e_p0_open needs 0 <= p <= dim P - 1");
  Int s = 0;
  for (const Face &f : all_faces(P, exec))
    if (f.dim == p + 1)
      s += f.interior;
  return sign(P.dim() - 1) * s;
}

HodgeRow h_p0_compact(const LatticePolytope &P, Exec exec) {
  if (P.dim() < 2)
    throw PreconditionViolation("h_p0_compact needs dim P >= 2");
  const auto faces = all_faces(P, exec);
  HodgeRow row;
  row.n = P.dim() - 1;
  row.closed.assign(static_cast<std::size_t>(row.n) + 1, 0);
  row.closed[0] = 1;
  row.closed[static_cast<std::size_t>(row.n)] += faces.back().interior; // P itself is listed last
  row.face_sum.assign(static_cast<std::size_t>(row.n) + 1, 0);
  row.face_sum[0] = 1;
  // The orbit of face delta contributes e^{p,0} = (-1)^{dim delta - 1} sum_{alpha in delta,
  // dim alpha = p+1} |alpha°|.
  for (const Face &d : faces) {
    if (d.dim < 2)
      continue;
    for (const Face &a : faces) {
      if (a.dim < 2 || a.dim > d.dim || a.interior == 0)
        continue;
      if (!std::includes(d.verts.begin(), d.verts.end(), a.verts.begin(), a.verts.end()))
        continue;
      const int p = a.dim - 1;
      row.face_sum[static_cast<std::size_t>(p)] += sign(p) * sign(d.dim - 1) * a.interior;
    }
  }
  return row;
}

RationalityTest rational_dim3_test(const LatticePolytope &P) {
  if (P.dim() > 3)
    throw PreconditionViolation("rational_dim3_test needs dim P <= 3");
  RationalityTest t;
  LatticePolytope Q = P.is_full_dimensional() ? P : normalize_full_dimensional(P).polytope;
  t.rational = Q.dim() <= 0 || fine_interior(Q).empty();
  if (Q.dim() == 3)
    t.genus = h_p0_compact(Q).face_sum[1];
  return t;
}

} // namespace toricsr
