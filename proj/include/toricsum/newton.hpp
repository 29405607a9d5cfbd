#pragma once

// Newton polyhedron at the origin: exact V/H representations, the face
// lattice, the functionals nu, N, F, and sigma / kappa data.

#include "toricsum/numeric.hpp"
#include "toricsum/poly.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace toricsum {

struct Limits {
  int max_dimension = 8;
  /// Face enumeration visits 2^#facets subsets; refuse beyond 2^this.
  int max_facet_subsets_log2 = 22;
  int max_vertices = 64;
  std::uint64_t max_lattice_points = 50'000'000;
};

/// normal . x >= offset, normal primitive with nonnegative entries.
struct Facet {
  std::vector<std::int64_t> normal;
  std::int64_t offset = 0;
  friend bool operator==(const Facet&, const Facet&) = default;
};

/// Canonical face identity: vertex subset and recession-axis subset, as bitmasks.
struct FaceKey {
  std::uint64_t vertices = 0;
  std::uint32_t axes = 0;
  friend auto operator<=>(const FaceKey&, const FaceKey&) = default;
};

class NewtonPolyhedron {
 public:
  NewtonPolyhedron(Polynomial source, std::vector<ExponentVector> vertices, std::vector<Facet> facets);

  int dimension() const noexcept { return source_.dimension(); }
  const Polynomial& source() const noexcept { return source_; }
  const std::vector<ExponentVector>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }

  /// Membership in Delta_0 via the facet inequalities.
  bool contains(std::span<const std::int64_t> point) const;

 private:
  Polynomial source_;
  std::vector<ExponentVector> vertices_;
  std::vector<Facet> facets_;
};

/// Delta_0(f) = conv(Supp f) + R_+^n, exactly.
NewtonPolyhedron build_polyhedron(const Polynomial& f, const Limits& limits = {});

struct KValue {
  std::int64_t nu = 0;  // sum of k_i
  std::int64_t N = 0;   // min over Delta_0 of k . i
  FaceKey face;         // where the minimum is attained
};

KValue eval_k(const NewtonPolyhedron& P, std::span<const std::int64_t> k);

/// Affine dimension of conv(face vertices) + cone(e_i, i in axes).
int face_dimension(const NewtonPolyhedron& P, FaceKey key);

/// Indices of facets containing the face.
std::vector<int> active_facets(const NewtonPolyhedron& P, FaceKey key);

struct SigmaData {
  Rational sigma;   // 1 / t_star
  Rational t_star;  // (t_star,...,t_star) is where the diagonal enters Delta_0
  FaceKey f0;       // smallest face meeting the diagonal
  int f0_dim = 0;
  int kappa = 0;    // codimension of F_0
};

SigmaData sigma_data(const NewtonPolyhedron& P);

struct Face {
  int id = 0;
  FaceKey key;
  std::vector<int> vertex_ids;
  std::vector<int> recession_axes;  // 0-based variable indices
  int dim = 0;
  std::vector<int> active_facet_ids;
  std::vector<std::int64_t> witness;  // F(witness) is this face
  std::int64_t witness_offset = 0;    // N(witness)
  Rational sigma_tau;                 // sigma(f_tau), in ambient R^n
  Polynomial restriction = Polynomial::zero(1);  // f_tau

  /// True when exponent vector e lies on the face.
  bool contains(const ExponentVector& e) const;
};

/// The complete face lattice, Delta_0 included, ordered by (dim, key).
std::vector<Face> enumerate_faces(const NewtonPolyhedron& P, const Limits& limits = {});

/// Polyhedron, faces and sigma data of one polynomial, with F(k) lookup.
class FaceLattice {
 public:
  explicit FaceLattice(const Polynomial& f, const Limits& limits = {});

  const NewtonPolyhedron& polyhedron() const noexcept { return polyhedron_; }
  const std::vector<Face>& faces() const noexcept { return faces_; }
  const Face& face(int id) const { return faces_.at(static_cast<std::size_t>(id)); }
  const SigmaData& sigma() const noexcept { return sigma_; }
  int f0_id() const noexcept { return f0_id_; }
  int whole_id() const noexcept { return static_cast<int>(faces_.size()) - 1; }
  int dimension() const noexcept { return polyhedron_.dimension(); }
  const Limits& limits() const noexcept { return limits_; }

  std::optional<int> find(FaceKey key) const;

  struct Classified {
    std::int64_t nu = 0;
    std::int64_t N = 0;
    int face_id = 0;
  };
  Classified classify(std::span<const std::int64_t> k) const;

 private:
  Limits limits_;
  NewtonPolyhedron polyhedron_;
  std::vector<Face> faces_;
  std::map<FaceKey, int> index_;
  SigmaData sigma_;
  int f0_id_ = 0;
};

using LatticeVisitor = std::function<void(std::span<const std::int64_t> k, const FaceLattice::Classified&)>;

/// Every k in N^n with nu(k) <= T exactly once, ordered by nu then
/// lexicographically descending. Throws BudgetExceeded if C(T+n, n) is over
/// the point cap.
void enumerate_lattice_points(const FaceLattice& lattice, std::int64_t T, const LatticeVisitor& visit);

/// Number of k in N^n with nu(k) <= T, i.e. C(T+n, n), saturating.
std::uint64_t lattice_point_count(int n, std::int64_t T);

}  // namespace toricsum
