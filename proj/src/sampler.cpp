#include "shs6v/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace shs6v {

HeightField::HeightField(int X, int Y) : X_(X), Y_(Y) {
  if (X < 1 || Y < 1) throw std::invalid_argument("HeightField: dimensions must be >= 1");
  h_.assign(static_cast<std::size_t>(X + 1) * (Y + 1), 0);
}

std::size_t HeightField::idx(int x, int y) const {
  if (x < 0 || x > X_ || y < 0 || y > Y_)
    throw std::out_of_range("HeightField: (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") outside [0," + std::to_string(X_) + "]x[0," + std::to_string(Y_) +
                            "]");
  return static_cast<std::size_t>(y) * (X_ + 1) + x;
}

void HeightField::write_csv(std::ostream& os) const {
  os << "x,y,H\n";
  for (int y = 0; y <= Y_; ++y)
    for (int x = 0; x <= X_; ++x)
      os << x << ',' << y << ',' << at(x, y) << '\n';
}

void HeightField::write_binary(std::ostream& os) const {
  const std::int32_t dims[2] = {X_ + 1, Y_ + 1};
  os.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  os.write(reinterpret_cast<const char*>(h_.data()),
           static_cast<std::streamsize>(h_.size() * sizeof(std::int32_t)));
}

HeightField HeightField::read_binary(std::istream& is) {
  std::int32_t dims[2];
  is.read(reinterpret_cast<char*>(dims), sizeof(dims));
  if (!is || dims[0] < 2 || dims[1] < 2)
    throw std::runtime_error("HeightField::read_binary: bad header");
  HeightField f(dims[0] - 1, dims[1] - 1);
  is.read(reinterpret_cast<char*>(f.h_.data()),
          static_cast<std::streamsize>(f.h_.size() * sizeof(std::int32_t)));
  if (!is) throw std::runtime_error("HeightField::read_binary: truncated payload");
  return f;
}

VertexSampler::VertexSampler(const ModelParams<double>& p) : I_(p.I), J_(p.J) {
  rows_.resize(static_cast<std::size_t>(I_ + 1) * (J_ + 1));
  for (int v = 0; v <= I_; ++v)
    for (int h = 0; h <= J_; ++h) {
      auto& row = rows_[static_cast<std::size_t>(v) * (J_ + 1) + h];
      double acc = 0.0;
      for (const auto& out : row_distribution(p, v, h)) {
        acc += out.weight;
        row.push_back({out.i2, out.j2, acc});
      }
    }
}

std::pair<int, int> VertexSampler::draw(int v, int h, double u) const {
  if (v < 0 || v > I_ || h < 0 || h > J_)
    throw std::invalid_argument("VertexSampler::draw: input occupation out of range");
  const auto& row = rows_[static_cast<std::size_t>(v) * (J_ + 1) + h];
  for (std::size_t k = 0; k + 1 < row.size(); ++k)
    if (u < row[k].cdf) return {row[k].i2, row[k].j2};
  return {row.back().i2, row.back().j2};  // absorbs the tail roundoff
}

namespace {

void validate_boundary(const BoundaryCondition& b, int X, int Y, int I, int J) {
  if (static_cast<int>(b.v_bottom.size()) < X || static_cast<int>(b.h_left.size()) < Y)
    throw std::invalid_argument("sample_quadrant: boundary arrays shorter than the rectangle");
  for (int x = 0; x < X; ++x)
    if (b.v_bottom[x] < 0 || b.v_bottom[x] > I)
      throw std::domain_error("sample_quadrant: v_bottom out of [0, I]");
  for (int y = 0; y < Y; ++y)
    if (b.h_left[y] < 0 || b.h_left[y] > J)
      throw std::domain_error("sample_quadrant: h_left out of [0, J]");
}

}  // namespace

HeightField sample_quadrant(const VertexSampler& vs, const BoundaryCondition& b, int X, int Y,
                            RngStream& rng) {
  validate_boundary(b, X, Y, vs.I(), vs.J());
  HeightField f(X, Y);

  // boundary heights: left column from h_left, bottom row from v_bottom
  for (int y = 0; y < Y; ++y) f.at(0, y + 1) = f.at(0, y) + b.h_left[y];
  for (int x = 0; x < X; ++x) f.at(x + 1, 0) = f.at(x, 0) - b.v_bottom[x];

  // v_col[x]: vertical line count waiting below the next unprocessed vertex
  // in column x; h_row[y]: horizontal count waiting to the left in row y
  std::vector<int> v_col(b.v_bottom.begin(), b.v_bottom.begin() + X);
  std::vector<int> h_row(b.h_left.begin(), b.h_left.begin() + Y);

  for (int d = 0; d <= X + Y - 2; ++d) {
    const int x_lo = std::max(0, d - (Y - 1));
    const int x_hi = std::min(X - 1, d);
    for (int x = x_lo; x <= x_hi; ++x) {
      const int y = d - x;
      const int vi = v_col[x];
      const int hi = h_row[y];
      if (y > 0) f.at(x + 1, y) = f.at(x, y) - vi;  // vi crosses the row-y edge
      const auto [vo, ho] = vs.draw(vi, hi, rng.next_uniform());
      v_col[x] = vo;
      h_row[y] = ho;
    }
  }
  // top row: the final vertical outputs cross the y = Y edge
  for (int x = 0; x < X; ++x) f.at(x + 1, Y) = f.at(x, Y) - v_col[x];
  return f;
}

HeightField sample_quadrant(const ModelParams<double>& p, const BoundaryCondition& b, int X,
                            int Y, RngStream& rng) {
  const VertexSampler vs(p);
  return sample_quadrant(vs, b, X, Y, rng);
}

double height_interpolate(const HeightField& f, double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0) || x > f.dim_x() || y > f.dim_y())
    throw std::out_of_range("height_interpolate: point outside the field domain");
  const int x0 = std::min(static_cast<int>(std::floor(x)), f.dim_x() - 1);
  const int y0 = std::min(static_cast<int>(std::floor(y)), f.dim_y() - 1);
  const double tx = x - x0;
  const double ty = y - y0;
  const double lo = (1.0 - tx) * f.at(x0, y0) + tx * f.at(x0 + 1, y0);
  const double hi = (1.0 - tx) * f.at(x0, y0 + 1) + tx * f.at(x0 + 1, y0 + 1);
  return (1.0 - ty) * lo + ty * hi;
}

namespace {

std::vector<int> round_profile_increments(const std::function<double(double)>& profile,
                                          int count, double scale, double sign, int cap,
                                          const char* what) {
  // greedy rounding: carry the running deficit so partial sums stay within
  // one line of the target profile
  std::vector<int> steps(count, 0);
  double carry = 0.0;
  for (int k = 0; k < count; ++k) {
    const double d = sign * scale * (profile((k + 1) / scale) - profile(k / scale));
    if (d < -1e-9 || d > cap + 1e-9)
      throw std::domain_error(std::string(what) +
                              " profile slope outside the admissible cone at step " +
                              std::to_string(k));
    const double t = d + carry;
    const int step = std::clamp(static_cast<int>(std::floor(t + 0.5)), 0, cap);
    carry = t - step;
    steps[k] = step;
  }
  return steps;
}

}  // namespace

BoundaryCondition make_boundary(const BoundarySpec& spec, int X, int Y, int I, int J,
                                double scale, RngStream& rng) {
  if (X < 1 || Y < 1) throw std::invalid_argument("make_boundary: empty rectangle");
  BoundaryCondition b;
  switch (spec.kind) {
    case BoundaryKind::packed:
      b.v_bottom.assign(X, 0);
      b.h_left.assign(Y, J);
      break;
    case BoundaryKind::empty:
      b.v_bottom.assign(X, 0);
      b.h_left.assign(Y, 0);
      break;
    case BoundaryKind::bernoulli: {
      if (spec.rho_v < 0 || spec.rho_v > 1 || spec.rho_h < 0 || spec.rho_h > 1)
        throw std::domain_error("make_boundary: bernoulli densities must lie in [0, 1]");
      b.v_bottom.resize(X);
      b.h_left.resize(Y);
      for (int x = 0; x < X; ++x) {
        int n = 0;
        for (int k = 0; k < I; ++k) n += rng.next_uniform() < spec.rho_v;
        b.v_bottom[x] = n;
      }
      for (int y = 0; y < Y; ++y) {
        int n = 0;
        for (int k = 0; k < J; ++k) n += rng.next_uniform() < spec.rho_h;
        b.h_left[y] = n;
      }
      break;
    }
    case BoundaryKind::from_profile: {
      if (!spec.chi || !spec.psi)
        throw std::invalid_argument("make_boundary: from_profile needs chi and psi");
      if (!(scale > 0)) throw std::invalid_argument("make_boundary: scale must be positive");
      b.v_bottom = round_profile_increments(spec.chi, X, scale, -1.0, I, "chi");
      b.h_left = round_profile_increments(spec.psi, Y, scale, +1.0, J, "psi");
      break;
    }
  }
  return b;
}

}  // namespace shs6v
