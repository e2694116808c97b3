#include "pauligap/planewave.hpp"

#include <string>

#include "pauligap/error.hpp"

namespace pauligap {

BasisSet::BasisSet(int cutoff) : n_(cutoff) {
  if (cutoff < 0) throw Error("cutoff N must be >= 0");
}

int BasisSet::index_of(int m1, int m2) const {
  if (std::abs(m1) > n_ || std::abs(m2) > n_) return -1;
  return (m1 + n_) * (2 * n_ + 1) + (m2 + n_);
}

CVec3 chi_alpha_fourier(const Potential& pot, const Eigen::Vector2i& n, double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw Error("alpha must lie in (0, 0.5]");
  return alpha * alpha * pot.fourier(alpha * n.cast<double>());
}

FiberAssembler::FiberAssembler(int cutoff, Dispersion disp, Potential pot, Params params,
                               int max_dim)
    : basis_(std::make_shared<const BasisSet>(cutoff)),
      disp_(std::move(disp)),
      pot_(std::move(pot)),
      params_(params) {
  validate(params_);
  if (basis_->dim() > max_dim)
    throw Error("dimension overflow: dim " + std::to_string(basis_->dim()) + " exceeds limit " +
                std::to_string(max_dim));
  const int w = 4 * cutoff + 1;
  coef_.resize(std::size_t(w) * w);
  for (int a = 0; a < w; ++a)
    for (int b = 0; b < w; ++b)
      coef_[std::size_t(a) * w + b] =
          chi_alpha_fourier(pot_, Eigen::Vector2i(a - 2 * cutoff, b - 2 * cutoff), params_.alpha);
}

const CVec3& FiberAssembler::coefficient(int n1, int n2) const {
  const int n = basis_->cutoff(), w = 4 * n + 1;
  if (std::abs(n1) > 2 * n || std::abs(n2) > 2 * n) throw Error("coefficient index outside table");
  return coef_[std::size_t(n1 + 2 * n) * w + (n2 + 2 * n)];
}

FiberMatrix FiberAssembler::build(const Vec2& k, bool with_potential) const {
  const BasisSet& b = *basis_;
  const int modes = b.modes(), n = b.cutoff(), w = 4 * n + 1;
  FiberMatrix h;
  h.k = k;
  h.params = params_;
  if (!with_potential) h.params.beta = 0.0;
  h.basis = basis_;
  h.entries = MatXc::Zero(b.dim(), b.dim());

  std::vector<Mat2c> pot_blocks;
  if (with_potential && params_.beta != 0.0) {
    pot_blocks.resize(coef_.size());
    for (std::size_t i = 0; i < coef_.size(); ++i) pot_blocks[i] = params_.beta * sigma_dot(coef_[i]);
  }

  for (int i = 0; i < modes; ++i) {
    auto mi = b.mode(i);
    Vec2 p(2.0 * kPi * (mi[0] - k(0)), 2.0 * kPi * (mi[1] - k(1)));
    Mat2c diag = sigma_dot(disp_(p));
    if (!pot_blocks.empty()) {
      diag += pot_blocks[std::size_t(2 * n) * w + 2 * n];
      diag = (0.5 * (diag + diag.adjoint())).eval();
    }
    h.entries.block<2, 2>(2 * i, 2 * i) = diag;
    if (pot_blocks.empty()) continue;
    for (int j = i + 1; j < modes; ++j) {
      auto mj = b.mode(j);
      const Mat2c& blk =
          pot_blocks[std::size_t(mi[0] - mj[0] + 2 * n) * w + (mi[1] - mj[1] + 2 * n)];
      h.entries.block<2, 2>(2 * i, 2 * j) = blk;
      h.entries.block<2, 2>(2 * j, 2 * i) = blk.adjoint();
    }
  }
  return h;
}

FiberMatrix FiberAssembler::assemble(const Vec2& k) const { return build(k, true); }
FiberMatrix FiberAssembler::assemble_free(const Vec2& k) const { return build(k, false); }

FiberMatrix assemble_fiber(const Vec2& k, int cutoff, const Dispersion& disp, const Potential& pot,
                           const Params& params, int max_dim) {
  return FiberAssembler(cutoff, disp, pot, params, max_dim).assemble(k);
}

FiberMatrix assemble_free(const Vec2& k, int cutoff, const Dispersion& disp, int max_dim) {
  Params p{0.5, 0.0};
  return FiberAssembler(cutoff, disp, Potential::square(1.0, Vec3::Zero()), p, max_dim)
      .assemble_free(k);
}

BlockSplit split_blocks(const MatXc& h, int zero_mode) {
  const int dim = static_cast<int>(h.rows());
  const int p0 = 2 * zero_mode;
  if (zero_mode < 0 || p0 + 1 >= dim) throw Error("split_blocks: basis lacks the zero mode");
  BlockSplit s;
  s.q_rows.reserve(dim - 2);
  for (int r = 0; r < dim; ++r)
    if (r != p0 && r != p0 + 1) s.q_rows.push_back(r);
  const int nq = dim - 2;
  s.p0 = h.block<2, 2>(p0, p0);
  s.coupling.resize(2, nq);
  s.q0.resize(nq, nq);
  for (int b = 0; b < nq; ++b) {
    const int cb = s.q_rows[b];
    s.coupling(0, b) = h(p0, cb);
    s.coupling(1, b) = h(p0 + 1, cb);
    for (int a = 0; a < nq; ++a) s.q0(a, b) = h(s.q_rows[a], cb);
  }
  return s;
}

BlockSplit split_blocks(const FiberMatrix& h) {
  return split_blocks(h.entries, h.basis->zero_index());
}

MatXc join_blocks(const BlockSplit& s, int zero_mode) {
  const int nq = static_cast<int>(s.q_rows.size()), dim = nq + 2, p0 = 2 * zero_mode;
  MatXc h(dim, dim);
  h.block<2, 2>(p0, p0) = s.p0;
  for (int b = 0; b < nq; ++b) {
    const int cb = s.q_rows[b];
    h(p0, cb) = s.coupling(0, b);
    h(p0 + 1, cb) = s.coupling(1, b);
    h(cb, p0) = std::conj(s.coupling(0, b));
    h(cb, p0 + 1) = std::conj(s.coupling(1, b));
    for (int a = 0; a < nq; ++a) h(s.q_rows[a], cb) = s.q0(a, b);
  }
  return h;
}

}  // namespace pauligap
