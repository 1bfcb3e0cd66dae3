#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace sphsplit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEps = 1e-12;

// Thrown when a random draw lands on a probability-zero configuration
// (a hypersphere through a vertex, a piece on a facet, ...). Callers redraw.
struct DegenerateGeometry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Vec normalized(const Vec& v);
// First nonzero coordinate made positive, so u and -u coincide.
Vec canonicalize(const Vec& u);
double geodesic_distance(const Vec& x, const Vec& y);
// Angle between two vectors without arccos near +-1.
double angle_between(const Vec& a, const Vec& b);

struct GreatHypersphere {
  Vec normal;
  explicit GreatHypersphere(const Vec& u) : normal(canonicalize(u)) {}
  int dim() const { return static_cast<int>(normal.size()) - 1; }
};

enum class Side { Plus, Minus, OnBoundary };
Side side_of(const GreatHypersphere& S, const Vec& x, double eps = kEps);

struct GeodesicSegment {
  Vec a, b;
  double length;
  GeodesicSegment(const Vec& a, const Vec& b);
  Vec point(double theta) const;  // theta in [0, length]
};

// Endpoint touching counts as a hit.
bool segment_hit(const GreatHypersphere& S, const GeodesicSegment& seg, double eps = kEps);

Vec sample_uniform_sphere(int d, Rng& rng);
// Orthonormal basis of u-perp as columns ((d+1) x d).
Mat orthonormal_frame(const Vec& u);
Vec sample_uniform_on_subsphere(const GreatHypersphere& S, Rng& rng);

// Great-circle arc x(theta) = cos(theta) p + sin(theta) q, theta in [0, length].
struct Arc {
  Vec p, q;
  double length;
  Vec point(double theta) const { return std::cos(theta) * p + std::sin(theta) * q; }
  bool full() const { return length >= 2 * kPi - 1e-12; }
};

enum class HitResult { Hit, Miss, Degenerate };

// Polyhedral cone {x : <n_i, x> >= 0} in R^n together with its generators:
// an orthonormal lineality basis L and extreme rays orthogonal to L.
// Each ray remembers the indices of the constraints it is tight on.
class SphericalPolytope {
 public:
  struct Ray {
    Vec dir;
    std::vector<int> tight;  // sorted
  };

  static SphericalPolytope full_sphere(int n);
  static SphericalPolytope from_halfspaces(int n, const std::vector<Vec>& normals);

  int ambient() const { return n_; }  // n = d + 1
  const std::vector<Vec>& normals() const { return normals_; }
  const std::vector<Ray>& rays() const { return rays_; }
  const Mat& lineality() const { return lin_; }
  int lineality_dim() const { return static_cast<int>(lin_.cols()); }
  bool full_dimensional() const;
  bool contains(const Vec& x, double eps = 1e-10) const;

  HitResult hits_interior(const Vec& u, double eps = kEps) const;
  // Cone intersected with {<u,x> >= 0}; redundant constraints pruned.
  SphericalPolytope intersect(const Vec& u) const;

  // d = 2 (n = 3) measures. Also used for pieces of d = 3 in frame coordinates.
  enum class Kind2 { Full, Hemisphere, Lune, Polygon };
  Kind2 kind2() const;
  std::vector<Vec> vertex_cycle() const;        // counterclockwise seen from outside
  std::vector<double> interior_angles() const;  // aligned with vertex_cycle
  double area() const;
  double perimeter() const;

 private:
  int n_ = 0;
  std::vector<Vec> normals_;
  std::vector<Ray> rays_;
  Mat lin_;
  void prune();
};

HitResult hits_interior(const GreatHypersphere& S, const SphericalPolytope& c);

// c intersected with S, described inside S through an orthonormal frame of u-perp.
struct Piece {
  Vec normal;
  Mat frame;                    // n x (n-1)
  SphericalPolytope local;      // cone in R^(n-1)
  std::vector<Vec> parent_normals;

  int dim() const { return static_cast<int>(normal.size()) - 1; }
  bool contains(const Vec& x, double eps = 1e-10) const;
  Arc arc() const;  // d = 2 only
};

struct SplitResult {
  SphericalPolytope plus, minus;
  Piece piece;
};

// Throws DegenerateGeometry on boundary draws, std::invalid_argument on a miss.
SplitResult split(const SphericalPolytope& c, const GreatHypersphere& S);

double polygon_area_2d(const SphericalPolytope& c);

struct IntrinsicVolumes2 {
  double v0, v1, v2;
};
IntrinsicVolumes2 intrinsic_volumes_2d(const SphericalPolytope& c);
IntrinsicVolumes2 intrinsic_volumes_segment(double length);
// Chord of a d = 2 cell: (V0, V1) of an arc, with the full circle as (0, 1).
IntrinsicVolumes2 intrinsic_volumes_arc(const Arc& a);

struct CurvatureOptions {
  int gauss_nodes = 64;
  int mc_samples = 20000;
};
double curvature_measure_2d(const SphericalPolytope& c, int j, const std::function<double(const Vec&)>& h,
                            Rng& rng, const CurvatureOptions& opt = {});

struct GaussRule {
  std::vector<double> x, w;  // nodes and weights on [-1, 1]
};
const GaussRule& gauss_legendre(int n);

// Gauss-Legendre integral of h along the arc.
double arc_integral(const Arc& a, const std::function<double(const Vec&)>& h, int nodes = 64);

struct MeasureEstimate {
  double value;
  double std_error;
};
// H^(d-1) of the piece: exact for d <= 3, Monte Carlo above.
MeasureEstimate piece_measure(const Piece& piece, Rng* rng = nullptr, int samples = 200000);
// H^d of a cell by membership sampling (any d).
MeasureEstimate volume_mc(const SphericalPolytope& c, int samples, Rng& rng);

double beta_dim(int j);

}  // namespace sphsplit
