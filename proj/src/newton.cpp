#include "toricsum/newton.hpp"

#include "hull.hpp"
#include "toricsum/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace toricsum {

namespace {

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t to_int64(const BigInt& z) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min()) {
    throw Error("polyhedral data exceeds 64-bit range");
  }
  return z.convert_to<std::int64_t>();
}

}  // namespace

NewtonPolyhedron::NewtonPolyhedron(Polynomial source, std::vector<ExponentVector> vertices,
                                   std::vector<Facet> facets)
    : source_(std::move(source)), vertices_(std::move(vertices)), facets_(std::move(facets)) {}

bool NewtonPolyhedron::contains(std::span<const std::int64_t> point) const {
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Facet& f) { return dot(f.normal, point) >= f.offset; });
}

NewtonPolyhedron build_polyhedron(const Polynomial& f, const Limits& limits) {
  f.require_analyzable();
  const int n = f.dimension();
  if (n > limits.max_dimension) throw DimensionTooLarge(n, limits.max_dimension);

  const auto support = f.support();
  std::vector<Facet> facets;
  for (auto& h : detail::orthant_hull_facets(support, n)) {
    Facet facet;
    for (const auto& x : h.normal) facet.normal.push_back(to_int64(x));
    facet.offset = to_int64(h.offset);
    facets.push_back(std::move(facet));
  }

  // A support point is a vertex iff the normals of the facets through it
  // have full rank.
  std::vector<ExponentVector> vertices;
  for (const auto& s : support) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& facet : facets) {
      if (dot(facet.normal, s) == facet.offset) {
        rows.emplace_back(facet.normal.begin(), facet.normal.end());
      }
    }
    if (detail::rank(std::move(rows)) == n) vertices.push_back(s);
  }
  if (static_cast<int>(vertices.size()) > limits.max_vertices) {
    throw Error("polyhedron has " + std::to_string(vertices.size()) + " vertices, cap is " +
                std::to_string(limits.max_vertices));
  }
  return NewtonPolyhedron(f, std::move(vertices), std::move(facets));
}

KValue eval_k(const NewtonPolyhedron& P, std::span<const std::int64_t> k) {
  KValue out;
  const auto& vertices = P.vertices();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const std::int64_t value = dot(k, vertices[v]);
    if (value < best) {
      best = value;
      out.face.vertices = 0;
    }
    if (value == best) out.face.vertices |= std::uint64_t{1} << v;
  }
  out.N = best;
  for (std::size_t i = 0; i < k.size(); ++i) {
    out.nu += k[i];
    if (k[i] == 0) out.face.axes |= std::uint32_t{1} << i;
  }
  return out;
}

int face_dimension(const NewtonPolyhedron& P, FaceKey key) {
  const int n = P.dimension();
  std::vector<std::vector<Rational>> rows;
  const ExponentVector* base = nullptr;
  for (std::size_t v = 0; v < P.vertices().size(); ++v) {
    if (!(key.vertices >> v & 1U)) continue;
    const auto& vertex = P.vertices()[v];
    if (base == nullptr) {
      base = &vertex;
      continue;
    }
    std::vector<Rational> row;
    for (int i = 0; i < n; ++i) row.emplace_back(vertex[static_cast<std::size_t>(i)] - (*base)[static_cast<std::size_t>(i)]);
    rows.push_back(std::move(row));
  }
  for (int i = 0; i < n; ++i) {
    if (!(key.axes >> i & 1U)) continue;
    std::vector<Rational> row(static_cast<std::size_t>(n), Rational(0));
    row[static_cast<std::size_t>(i)] = 1;
    rows.push_back(std::move(row));
  }
  return detail::rank(std::move(rows));
}

std::vector<int> active_facets(const NewtonPolyhedron& P, FaceKey key) {
  std::vector<int> out;
  const auto& facets = P.facets();
  for (std::size_t f = 0; f < facets.size(); ++f) {
    bool active = true;
    for (std::size_t v = 0; v < P.vertices().size() && active; ++v) {
      if ((key.vertices >> v & 1U) && dot(facets[f].normal, P.vertices()[v]) != facets[f].offset) active = false;
    }
    for (std::size_t i = 0; i < facets[f].normal.size() && active; ++i) {
      if ((key.axes >> i & 1U) && facets[f].normal[i] != 0) active = false;
    }
    if (active) out.push_back(static_cast<int>(f));
  }
  return out;
}

SigmaData sigma_data(const NewtonPolyhedron& P) {
  SigmaData out;
  bool found = false;
  for (const auto& facet : P.facets()) {
    if (facet.offset <= 0) continue;
    const std::int64_t nu = std::accumulate(facet.normal.begin(), facet.normal.end(), std::int64_t{0});
    Rational t(facet.offset, nu);
    if (!found || t > out.t_star) out.t_star = t;
    found = true;
  }
  if (!found) throw Error("internal: no facet with positive offset");
  out.sigma = 1 / out.t_star;

  std::vector<std::int64_t> k(static_cast<std::size_t>(P.dimension()), 0);
  for (const auto& facet : P.facets()) {
    const std::int64_t nu = std::accumulate(facet.normal.begin(), facet.normal.end(), std::int64_t{0});
    if (out.t_star * nu == facet.offset) {
      for (std::size_t i = 0; i < k.size(); ++i) k[i] += facet.normal[i];
    }
  }
  out.f0 = eval_k(P, k).face;
  out.f0_dim = face_dimension(P, out.f0);
  out.kappa = P.dimension() - out.f0_dim;
  return out;
}

bool Face::contains(const ExponentVector& e) const { return dot(witness, e) == witness_offset; }

std::vector<Face> enumerate_faces(const NewtonPolyhedron& P, const Limits& limits) {
  const auto& facets = P.facets();
  if (static_cast<int>(facets.size()) > limits.max_facet_subsets_log2) {
    throw FacetCountTooLarge(facets.size(), limits.max_facet_subsets_log2);
  }
  const auto n = static_cast<std::size_t>(P.dimension());

  // Each face's normal cone is generated by the normals of the facets that
  // contain it, and the sum of those normals lies in its relative interior,
  // so summing over all facet subsets reaches every face. The empty subset
  // gives k = 0 and Delta_0 itself.
  std::map<FaceKey, std::vector<std::int64_t>> witnesses;
  const std::uint64_t subsets = std::uint64_t{1} << facets.size();
  std::vector<std::int64_t> k(n);
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::fill(k.begin(), k.end(), 0);
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (!(mask >> f & 1U)) continue;
      for (std::size_t i = 0; i < n; ++i) k[i] += facets[f].normal[i];
    }
    witnesses.try_emplace(eval_k(P, k).face, k);
  }

  std::vector<Face> faces;
  for (auto& [key, witness] : witnesses) {
    Face face;
    face.key = key;
    for (std::size_t v = 0; v < P.vertices().size(); ++v) {
      if (key.vertices >> v & 1U) face.vertex_ids.push_back(static_cast<int>(v));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (key.axes >> i & 1U) face.recession_axes.push_back(static_cast<int>(i));
    }
    face.dim = face_dimension(P, key);
    face.active_facet_ids = active_facets(P, key);
    face.witness_offset = eval_k(P, witness).N;
    face.witness = std::move(witness);
    auto restriction = face_restriction(P.source(), [&](const ExponentVector& e) { return face.contains(e); });
    if (!restriction) throw Error("internal: face restriction vanished");
    face.restriction = std::move(*restriction);
    faces.push_back(std::move(face));
  }
  std::stable_sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.key < b.key;
  });
  for (std::size_t i = 0; i < faces.size(); ++i) {
    faces[i].id = static_cast<int>(i);
    faces[i].sigma_tau = sigma_data(build_polyhedron(faces[i].restriction, limits)).sigma;
  }
  return faces;
}

FaceLattice::FaceLattice(const Polynomial& f, const Limits& limits)
    : limits_(limits), polyhedron_(build_polyhedron(f, limits)), faces_(enumerate_faces(polyhedron_, limits)) {
  for (const auto& face : faces_) index_.emplace(face.key, face.id);
  sigma_ = sigma_data(polyhedron_);
  f0_id_ = index_.at(sigma_.f0);
}

std::optional<int> FaceLattice::find(FaceKey key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FaceLattice::Classified FaceLattice::classify(std::span<const std::int64_t> k) const {
  const KValue v = eval_k(polyhedron_, k);
  auto it = index_.find(v.face);
  if (it == index_.end()) throw Error("internal: F(k) is not an enumerated face");
  return {v.nu, v.N, it->second};
}

std::uint64_t lattice_point_count(int n, std::int64_t T) {
  if (T < 0) return 0;
  return binomial_saturating(static_cast<std::uint64_t>(T) + static_cast<std::uint64_t>(n),
                             static_cast<std::uint64_t>(n));
}

void enumerate_lattice_points(const FaceLattice& lattice, std::int64_t T, const LatticeVisitor& visit) {
  if (T < 0) throw Error("lattice bound T must be nonnegative");
  const int n = lattice.dimension();
  const std::uint64_t count = lattice_point_count(n, T);
  if (count > lattice.limits().max_lattice_points) {
    throw BudgetExceeded(count, lattice.limits().max_lattice_points);
  }
  const auto dims = static_cast<std::size_t>(n);
  std::vector<std::int64_t> k(dims, 0);
  for (std::int64_t nu = 0; nu <= T; ++nu) {
    // Compositions of nu into n parts, lexicographically descending.
    std::fill(k.begin(), k.end(), 0);
    k[0] = nu;
    while (true) {
      visit(k, lattice.classify(k));
      // Advance: find the rightmost nonzero entry before the last slot.
      if (dims == 1) break;
      std::size_t j = dims - 1;
      const std::int64_t tail = k[j];
      k[j] = 0;
      std::size_t i = dims - 2;
      while (true) {
        if (k[i] > 0) break;
        if (i == 0) {
          i = dims;
          break;
        }
        --i;
      }
      if (i == dims) break;
      k[i] -= 1;
      k[i + 1] = tail + 1;
    }
  }
}

}  // namespace toricsum
