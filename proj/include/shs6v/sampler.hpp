#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "shs6v/rng.hpp"
#include "shs6v/weights.hpp"

namespace shs6v {

/// Lines entering the quadrant: v_bottom[x] from below vertex (x,0),
/// h_left[y] from the left of vertex (0,y).
struct BoundaryCondition {
  std::vector<int> v_bottom;
  std::vector<int> h_left;
};

/// Integer height function on the grid [0,X] x [0,Y]. Crossing a vertical
/// line (moving right) decreases H, crossing a horizontal line (moving up)
/// increases it.
class HeightField {
 public:
  HeightField(int X, int Y);

  int dim_x() const { return X_; }
  int dim_y() const { return Y_; }

  std::int32_t at(int x, int y) const { return h_[idx(x, y)]; }
  std::int32_t& at(int x, int y) { return h_[idx(x, y)]; }

  /// CSV rows (x, y, H) with a header, y-major order.
  void write_csv(std::ostream& os) const;
  /// width, height as 32-bit little-endian integers, then row-major values.
  void write_binary(std::ostream& os) const;
  static HeightField read_binary(std::istream& is);

  bool operator==(const HeightField& other) const = default;

 private:
  std::size_t idx(int x, int y) const;
  int X_, Y_;
  std::vector<std::int32_t> h_;
};

/// Precomputed cumulative row distributions for every input pair (v, h).
/// Immutable after construction; safe to share across replica threads.
class VertexSampler {
 public:
  explicit VertexSampler(const ModelParams<double>& p);

  /// Draws (v_out, h_out) for inputs (v, h) from one uniform variate.
  std::pair<int, int> draw(int v, int h, double u) const;

  int I() const { return I_; }
  int J() const { return J_; }

 private:
  struct Outcome {
    int i2, j2;
    double cdf;
  };
  int I_, J_;
  std::vector<std::vector<Outcome>> rows_;
};

/// Runs the sequential vertex-by-vertex update over the rectangle of
/// vertices [0,X) x [0,Y) in anti-diagonal order and returns the height
/// field on [0,X] x [0,Y]. Consumes exactly one uniform per vertex.
HeightField sample_quadrant(const VertexSampler& vs, const BoundaryCondition& b, int X, int Y,
                            RngStream& rng);
HeightField sample_quadrant(const ModelParams<double>& p, const BoundaryCondition& b, int X,
                            int Y, RngStream& rng);

/// Piecewise-linear extension: interpolate in x on the two bracketing rows,
/// then in y. Exact at grid points.
double height_interpolate(const HeightField& f, double x, double y);

enum class BoundaryKind { packed, empty, bernoulli, from_profile };

struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::packed;
  double rho_v = 0.0;  // bernoulli: line density per vertical slot
  double rho_h = 0.0;  // bernoulli: line density per horizontal slot
  // from_profile: macroscopic profiles; chi has slope in [-I, 0], psi in [0, J]
  std::function<double(double)> chi;
  std::function<double(double)> psi;
};

/// Builds boundary data for an X x Y vertex rectangle. `scale` is the
/// lattice-to-macroscopic ratio used by from_profile (targets are
/// scale * chi(x / scale)); bernoulli draws use `rng`.
BoundaryCondition make_boundary(const BoundarySpec& spec, int X, int Y, int I, int J,
                                double scale, RngStream& rng);

}  // namespace shs6v
