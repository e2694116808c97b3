#pragma once

#include <array>
#include <memory>
#include <vector>

#include "pauligap/linalg.hpp"
#include "pauligap/model.hpp"

namespace pauligap {

// Modes m with |m1|, |m2| <= N. Mode index i = (m1 + N)(2N + 1) + (m2 + N),
// so (-N, -N) comes first and m2 runs fastest. Spin component s of mode i
// sits at row 2i + s.
class BasisSet {
 public:
  explicit BasisSet(int cutoff);
  int cutoff() const { return n_; }
  int modes() const { return (2 * n_ + 1) * (2 * n_ + 1); }
  int dim() const { return 2 * modes(); }
  std::array<int, 2> mode(int i) const { return {i / (2 * n_ + 1) - n_, i % (2 * n_ + 1) - n_}; }
  int index_of(int m1, int m2) const;  // -1 if outside the cutoff
  int zero_index() const { return index_of(0, 0); }

 private:
  int n_;
};

struct FiberMatrix {
  Vec2 k = Vec2::Zero();
  Params params;
  std::shared_ptr<const BasisSet> basis;
  MatXc entries;

  Mat2c block(int i, int j) const { return entries.block<2, 2>(2 * i, 2 * j); }
};

// alpha^2 chi^(alpha n)
CVec3 chi_alpha_fourier(const Potential& pot, const Eigen::Vector2i& n, double alpha);

inline constexpr int kDefaultMaxDim = 20000;

// Assembles fibers for one (basis, dispersion, potential, params) set. The
// table of potential coefficients c(n) = alpha^2 chi^(alpha n) for all
// differences of retained modes is computed once and shared across k.
class FiberAssembler {
 public:
  FiberAssembler(int cutoff, Dispersion disp, Potential pot, Params params,
                 int max_dim = kDefaultMaxDim);

  FiberMatrix assemble(const Vec2& k) const;
  FiberMatrix assemble_free(const Vec2& k) const;

  const std::shared_ptr<const BasisSet>& basis() const { return basis_; }
  const Dispersion& dispersion() const { return disp_; }
  const Potential& potential() const { return pot_; }
  const Params& params() const { return params_; }
  // c(n) for |n_i| <= 2N.
  const CVec3& coefficient(int n1, int n2) const;

 private:
  FiberMatrix build(const Vec2& k, bool with_potential) const;
  std::shared_ptr<const BasisSet> basis_;
  Dispersion disp_;
  Potential pot_;
  Params params_;
  std::vector<CVec3> coef_;
};

FiberMatrix assemble_fiber(const Vec2& k, int cutoff, const Dispersion& disp, const Potential& pot,
                           const Params& params, int max_dim = kDefaultMaxDim);
FiberMatrix assemble_free(const Vec2& k, int cutoff, const Dispersion& disp,
                          int max_dim = kDefaultMaxDim);

struct BlockSplit {
  Mat2c p0;        // P0 H P0
  MatXc coupling;  // P0 H Q0, 2 x (dim - 2)
  MatXc q0;        // Q0 H Q0
  std::vector<int> q_rows;  // rows of H kept in Q0, in original order
};

BlockSplit split_blocks(const MatXc& h, int zero_mode);
BlockSplit split_blocks(const FiberMatrix& h);

// Inverse of split_blocks.
MatXc join_blocks(const BlockSplit& s, int zero_mode);

}  // namespace pauligap
