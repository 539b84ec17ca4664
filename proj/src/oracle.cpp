#include "cuspcalc/oracle.hpp"

#include <fftw3.h>
#include <lapacke.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <optional>
#include <sstream>

#include "cuspcalc/errors.hpp"
#include "cuspcalc/random.hpp"

namespace cuspcalc {

using cd = std::complex<double>;

namespace {

double smooth_step(double t) {
  auto f = [](double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; };
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  return f(t) / (f(t) + f(1 - t));
}

double cutoff(double zeta, const DiscretizationSpec& spec) {
  return smooth_step((std::abs(zeta) - spec.cutoff_inner) / (spec.cutoff_outer - spec.cutoff_inner));
}

// One homogeneous term c^sigma abs(zeta)^j; a polynomial term c zeta^j needs no cutoff.
struct Term {
  int j;
  bool polynomial;
  SMat plus, minus;
};

std::vector<Term> terms_of(const CuspElement& a) {
  std::vector<Term> out;
  for (const auto& [j, c] : a.sigma()) {
    bool poly = false;
    if (j >= 0) {
      SMat flipped = c.plus;
      if (j % 2 == 1) flipped = flipped * SFunc(-1);
      poly = flipped == c.minus;
    }
    out.push_back({j, poly, c.plus, c.minus});
  }
  return out;
}

// Multiplier of a term on branch sign(zeta), without the z-dependent coefficient.
double multiplier(const Term& t, double zeta, const DiscretizationSpec& spec) {
  if (t.polynomial) return std::pow(zeta, t.j);
  if (zeta == 0) return 0;
  return cutoff(zeta, spec) * std::pow(std::abs(zeta), t.j);
}

void check_spec(int grid, const DiscretizationSpec& spec) {
  if (grid < 128 || (grid & (grid - 1)) != 0) throw std::invalid_argument("grid must be a power of two >= 128");
  if (!(spec.threshold > 0 && spec.threshold < 1e-2)) throw std::invalid_argument("threshold must lie in (0, 1e-2)");
}

}  // namespace

std::vector<cd> total_symbol(const CuspElement& a, double z, double zeta, const DiscretizationSpec& spec) {
  const int n = a.dim();
  std::vector<cd> m(static_cast<std::size_t>(n * n));
  for (const Term& t : terms_of(a)) {
    const double w = multiplier(t, zeta, spec);
    if (w == 0) continue;
    const SMat& c = t.polynomial || zeta > 0 ? t.plus : t.minus;
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k) m[static_cast<std::size_t>(r * n + k)] += w * c(r, k).eval(z);
  }
  return m;
}

std::vector<cd> discretize(const CuspElement& a, int grid, double half_width, const DiscretizationSpec& spec) {
  check_spec(grid, spec);
  const int n = a.dim();
  const auto N = static_cast<std::size_t>(grid);
  const std::size_t dim = N * static_cast<std::size_t>(n);
  std::vector<cd> mat(dim * dim);
  const double h = 2 * half_width / grid;
  const double dzeta = std::numbers::pi / half_width;

  std::vector<cd> buf(N);
  fftw_plan plan = fftw_plan_dft_1d(grid, reinterpret_cast<fftw_complex*>(buf.data()),
                                    reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  for (const Term& t : terms_of(a)) {
    for (int branch : {1, -1}) {
      if (t.polynomial && branch < 0) continue;
      // circulant kernel of the multiplier restricted to the branch
      for (std::size_t m = 0; m < N; ++m) {
        const long mm = m < N / 2 ? static_cast<long>(m) : static_cast<long>(m) - grid;
        double v = 0;
        if (m == N / 2) {
          const double zeta = dzeta * static_cast<double>(grid / 2);
          v = t.polynomial ? 0.5 * (multiplier(t, zeta, spec) + multiplier(t, -zeta, spec))
                           : 0.5 * multiplier(t, branch * zeta, spec);
        } else {
          const double zeta = dzeta * static_cast<double>(mm);
          if (t.polynomial || zeta * branch > 0) v = multiplier(t, zeta, spec);
        }
        buf[m] = v / grid;
      }
      fftw_execute(plan);
      const SMat& c = branch > 0 ? t.plus : t.minus;
      for (int r = 0; r < n; ++r)
        for (int q = 0; q < n; ++q) {
          if (c(r, q).is_zero()) continue;
          for (std::size_t k = 0; k < N; ++k) {
            const cd ck = c(r, q).eval(-half_width + h * static_cast<double>(k));
            const std::size_t row = static_cast<std::size_t>(r) * N + k;
            for (std::size_t l = 0; l < N; ++l) {
              const std::size_t col = static_cast<std::size_t>(q) * N + l;
              mat[col * dim + row] += ck * buf[(k + N - l) % N];
            }
          }
        }
    }
  }
  fftw_destroy_plan(plan);
  return mat;
}

namespace {

// Columns of the window abs(z) < 0.85 L: kernels of the restricted matrices are the interior-supported
// near-kernels; wrap-around modes at the periodic seam are excluded by construction.
std::vector<std::size_t> window(int n, int grid, double half_width) {
  const double h = 2 * half_width / grid;
  std::vector<std::size_t> cols;
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < grid; ++k)
      if (std::abs(-half_width + h * k) < 0.85 * half_width) cols.push_back(static_cast<std::size_t>(r * grid + k));
  return cols;
}

struct Svd {
  std::vector<double> s;  // descending
  std::vector<cd> v;      // right singular vectors as columns (when requested)
};

// SVD of a rows x cols column-major matrix; a global phase times a real matrix takes the real path.
Svd compute_svd(std::vector<cd> mat, std::size_t rows, std::size_t cols, bool vectors) {
  Svd out;
  const std::size_t k = std::min(rows, cols);
  out.s.resize(k);
  const auto m = static_cast<lapack_int>(rows), n = static_cast<lapack_int>(cols);
  const char job = vectors ? 'S' : 'N';
  double big = 0;
  cd phase = 1;
  for (const cd& x : mat)
    if (std::abs(x) > big) big = std::abs(x), phase = x / std::abs(x);
  bool real = true;
  for (const cd& x : mat)
    if (std::abs((x * std::conj(phase)).imag()) > 1e-13 * big) {
      real = false;
      break;
    }
  std::vector<cd> vt;
  if (real) {
    std::vector<double> a(mat.size()), u(vectors ? rows * k : 1), w(vectors ? k * cols : 1);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (mat[i] * std::conj(phase)).real();
    if (LAPACKE_dgesdd(LAPACK_COL_MAJOR, job, m, n, a.data(), m, out.s.data(), u.data(), m, w.data(),
                       static_cast<lapack_int>(k)) != 0)
      throw std::runtime_error("dgesdd failed");
    if (vectors) vt.assign(w.begin(), w.end());
  } else {
    std::vector<cd> u(vectors ? rows * k : 1), w(vectors ? k * cols : 1);
    if (LAPACKE_zgesdd(LAPACK_COL_MAJOR, job, m, n, reinterpret_cast<lapack_complex_double*>(mat.data()), m,
                       out.s.data(), reinterpret_cast<lapack_complex_double*>(u.data()), m,
                       reinterpret_cast<lapack_complex_double*>(w.data()), static_cast<lapack_int>(k)) != 0)
      throw std::runtime_error("zgesdd failed");
    if (vectors) vt = std::move(w);
  }
  if (vectors) {
    out.v.resize(cols * k);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t r = 0; r < cols; ++r) out.v[c * cols + r] = std::conj(vt[r * k + c]);
  }
  return out;
}

std::vector<cd> restrict_columns(const std::vector<cd>& mat, std::size_t dim, const std::vector<std::size_t>& cols,
                                 bool adjoint) {
  std::vector<cd> out(dim * cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t r = 0; r < dim; ++r)
      out[j * dim + r] = adjoint ? std::conj(mat[r * dim + cols[j]]) : mat[cols[j] * dim + r];
  return out;
}

}  // namespace

SvdRun svd_run(const CuspElement& a, int grid, double half_width, const DiscretizationSpec& spec, bool vectors) {
  const int n = a.dim();
  const std::size_t dim = static_cast<std::size_t>(grid) * static_cast<std::size_t>(n);
  const std::vector<cd> mat = discretize(a, grid, half_width, spec);
  const std::vector<std::size_t> cols = window(n, grid, half_width);
  const Svd ker = compute_svd(restrict_columns(mat, dim, cols, false), dim, cols.size(), vectors);
  const Svd coker = compute_svd(restrict_columns(mat, dim, cols, true), dim, cols.size(), false);

  SvdRun run;
  run.grid = grid;
  run.half_width = half_width;
  const double h = 2 * half_width / grid;
  for (int k = 0; k < grid; ++k) run.grid_points.push_back(-half_width + h * k);
  run.gap = std::numeric_limits<double>::infinity();
  for (const Svd* s : {&ker, &coker}) {
    for (double v : s->s) {
      if (v < spec.threshold) {
        ++(s == &ker ? run.kernel : run.cokernel);
        run.largest_small = std::max(run.largest_small, v);
      } else {
        run.gap = std::min(run.gap, v);
      }
    }
  }
  if (vectors) {
    const Eigen::Map<const Eigen::MatrixXcd> A(mat.data(), static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < ker.s.size(); ++i) {
      if (ker.s[i] >= spec.threshold) continue;
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
      for (std::size_t j = 0; j < cols.size(); ++j) v(static_cast<Eigen::Index>(cols[j])) = ker.v[i * cols.size() + j];
      run.max_kernel_residual = std::max(run.max_kernel_residual, (A * v).norm());
      run.kernel_vectors.emplace_back(v.data(), v.data() + dim);
    }
  }
  std::ostringstream why;
  if (run.gap <= 10 * spec.threshold || run.gap < 1e-3) {
    why << "gap " << run.gap << " at grid " << grid << ", L " << half_width
        << ": needs more than 10 x threshold and at least 1e-3";
    throw GapTooSmall(why.str());
  }
  return run;
}

SvdIndex svd_index(const CuspElement& a, const DiscretizationSpec& spec) {
  SvdIndex out;
  out.runs.push_back(svd_run(a, spec.grid, spec.half_width, spec, true));
  if (spec.recheck) {
    out.runs.push_back(svd_run(a, 2 * spec.grid, spec.half_width, spec, false));
    out.runs.push_back(svd_run(a, 2 * spec.grid, 1.5 * spec.half_width, spec, false));
  }
  std::ostringstream d;
  out.index = out.runs.front().kernel - out.runs.front().cokernel;
  for (const SvdRun& r : out.runs) {
    d << "grid " << r.grid << " L " << r.half_width << ": ker " << r.kernel << " coker " << r.cokernel << " gap "
      << r.gap << " residual " << r.max_kernel_residual << "; ";
    if (r.kernel - r.cokernel != out.index) {
      throw GapTooSmall("index changes under refinement: " + d.str());
    }
  }
  out.diagnostics = d.str();
  return out;
}

namespace {

cd symbol_det(const CuspElement& a, double z, double zeta, const DiscretizationSpec& spec) {
  const int n = a.dim();
  const std::vector<cd> m = total_symbol(a, z, zeta, spec);
  Eigen::MatrixXcd M(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) M(r, c) = m[static_cast<std::size_t>(r * n + c)];
  return M.determinant();
}

}  // namespace

WindingResult winding_index(const CuspElement& a, double S, double T, const DiscretizationSpec& spec) {
  // corners in (zeta, z), counterclockwise
  const double cz[5][2] = {{S, -T}, {S, T}, {-S, T}, {-S, -T}, {S, -T}};
  WindingResult out;
  double total = 0;
  auto at = [&](int edge, double t) {
    const double zeta = cz[edge][0] + t * (cz[edge + 1][0] - cz[edge][0]);
    const double z = cz[edge][1] + t * (cz[edge + 1][1] - cz[edge][1]);
    const cd d = symbol_det(a, z, zeta, spec);
    ++out.samples;
    if (std::abs(d) < 1e-12) {
      std::ostringstream os;
      os << "det of the symbol vanishes on the boundary near z = " << z << ", zeta = " << zeta;
      throw HypothesisViolation(os.str());
    }
    return d;
  };
  for (int edge = 0; edge < 4; ++edge) {
    struct Piece {
      double t0, t1;
      cd d0, d1;
      int depth;
    };
    std::vector<Piece> stack = {{0, 1, at(edge, 0), at(edge, 1), 0}};
    while (!stack.empty()) {
      Piece p = stack.back();
      stack.pop_back();
      const double tm = 0.5 * (p.t0 + p.t1);
      const cd dm = at(edge, tm);
      const double whole = std::arg(p.d1 / p.d0);
      const double a1 = std::arg(dm / p.d0), a2 = std::arg(p.d1 / dm);
      const bool smooth = std::abs(a1) < 0.1 && std::abs(a2) < 0.1 && std::abs(a1 + a2 - whole) < 1e-9;
      if (smooth || p.depth > 40) {
        if (!smooth) throw HypothesisViolation("arg det is not resolved along the boundary");
        total += whole;
      } else {
        stack.push_back({tm, p.t1, dm, p.d1, p.depth + 1});
        stack.push_back({p.t0, tm, p.d0, dm, p.depth + 1});
      }
    }
  }
  out.raw = -total / (2 * std::numbers::pi);
  out.index = std::lround(out.raw);
  if (std::abs(out.raw - static_cast<double>(out.index)) > 1e-6) throw HypothesisViolation("winding is not an integer");
  return out;
}

CuspElement calibration_anchor(Trunc t) {
  const SFunc phi = SFunc::var() * SFunc::s();
  return CuspElement::zeta(1, t) - CuspElement::scalar_z(phi, 1, t) * GaussRat(Rational(0), Rational(4));
}

namespace {

// c with num = c * den, when the two scalars are proportional over Q(i)
std::optional<GaussRat> proportional(const ExactScalar& num, const ExactScalar& den) {
  if (den.is_zero()) return std::nullopt;
  const auto& [m, d] = *den.terms().begin();
  const GaussRat c = num.coefficient(m) / d;
  if (!(den * ExactScalar(c) == num)) return std::nullopt;
  return c;
}

// one ratio shared by every sample where either side is nonzero
GaussRat common_ratio(const std::vector<std::pair<ExactScalar, ExactScalar>>& samples, const std::string& what) {
  std::optional<GaussRat> ratio;
  for (const auto& [num, den] : samples) {
    if (num.is_zero() && den.is_zero()) continue;
    auto c = proportional(num, den);
    if (!c || (ratio && !(*ratio == *c))) throw CalibrationInconsistent(what + ": no common normalization");
    ratio = c;
  }
  if (!ratio) throw CalibrationInconsistent(what + ": the generating set does not see this constant");
  return *ratio;
}

}  // namespace

Calibration calibrate(const CuspElement& anchor, const DiscretizationSpec& spec) {
  const CalibrationConstants k0 = CalibrationConstants::defaults();
  const RegularizerQ q = RegularizerQ::standard();
  const Trunc t{-4, 4};
  Rng g(20240611);
  std::vector<std::pair<ExactScalar, ExactScalar>> qs, xs, rs;
  for (int i = 0; i < 10; ++i) {
    const int n = i < 8 ? 1 : 2;
    const CuspElement a = random_element(g, n, t, 1, -2, 1, -2, 1), b = random_element(g, n, t, 1, -2, 1, -2, 1);
    const CuspElement c = commutator(a, b);
    qs.emplace_back(rTr(star(a, log_derivation(b, LogKind::LogQ, q)), k0), hiTr(c, q, k0));
    xs.emplace_back(-rTr(star(a, log_derivation(b, LogKind::LogX, q)), k0), hdTr(c, {}, k0));
    const HadamardResult h = hdTr_full(a, {}, k0);
    rs.emplace_back(rTr(a, k0), k0.kappa_d * h.integral.logT_coeff());
  }
  // kappa_i = mu_i lambda kappa_i0, kappa_d = mu_d lambda kappa_d0, kappa_r = lambda kappa_r0
  const GaussRat mu_i = common_ratio(qs, "hiTr([A,B]) = rTr(A [log Q, B])");
  const GaussRat mu_d = common_ratio(xs, "hdTr([A,B]) = -rTr(A [log x, B])");
  const GaussRat eps = common_ratio(rs, "rTr readout against the log T coefficient") / mu_d;
  if (!(eps == GaussRat(1) || eps == GaussRat(-1))) throw CalibrationInconsistent("readout ratio is not a sign");

  CalibrationConstants k = k0;
  k.kappa_i = ExactScalar(mu_i) * k0.kappa_i;
  k.kappa_d = ExactScalar(mu_d) * k0.kappa_d;
  k.readout_sign = eps == GaussRat(1) ? 1 : -1;
  k.index_sign = 1;

  const SvdIndex oracle = svd_index(anchor, spec);
  if (oracle.index == 0) throw CalibrationInconsistent("the anchor has index 0 and cannot fix the scale");
  const IndexReport base = assemble_index(anchor, q, IndexMode::General, k);
  if (!base.if_value.is_constant() || base.if_value.is_zero()) {
    throw CalibrationInconsistent("If(anchor) = " + base.if_value.str() + " cannot match the oracle index " +
                                  std::to_string(oracle.index));
  }
  const GaussRat scale = GaussRat(oracle.index) / base.if_value.constant_part();
  if (scale.im.sign() != 0) throw CalibrationInconsistent("the index scale is not real");
  const int sign = scale.re.sign();
  const ExactScalar lambda(GaussRat(sign > 0 ? scale.re : Rational(-scale.re)));
  k.kappa_r = lambda * k.kappa_r;
  k.kappa_d = lambda * k.kappa_d;
  k.kappa_i = lambda * k.kappa_i;
  k.index_sign = sign;

  // the eta convention: the indicial eta invariants must reproduce the oracle index
  const IndexReport rep = assemble_index(anchor, q, IndexMode::General, k);
  const ExactScalar half(GaussRat(rat(1, 2)));
  Calibration out;
  std::vector<int> fits;
  for (int eta_sign : {-1, 1}) {
    SuspendedConventions c;
    c.eta_sign = eta_sign;
    ExactScalar eta;
    for (End e : {End::Plus, End::Minus}) eta += eta_suspended(indicial_family(anchor, e), c);
    const ExactScalar assembled = ExactScalar(k.index_sign) * (rep.asb - half * eta + rep.i_f + rep.s_f);
    if (assembled == ExactScalar(oracle.index)) fits.push_back(eta_sign);
  }
  if (fits.empty()) throw CalibrationInconsistent("no eta convention reproduces the oracle index");
  out.conventions.eta_sign = fits.front();
  out.constants = k;
  std::ostringstream prov;
  prov << "calibrated: kappa_r " << k.kappa_r.str() << ", kappa_d " << k.kappa_d.str() << ", kappa_i "
       << k.kappa_i.str() << ", readout sign " << k.readout_sign << ", index sign " << k.index_sign
       << ", eta sign " << out.conventions.eta_sign << "; oracle " << oracle.diagnostics;
  out.constants.provenance = prov.str();
  out.report = prov.str();
  out.alternatives.push_back("all kappa negated with index sign " + std::to_string(-k.index_sign));
  out.alternatives.push_back("t sign and eta sign both negated");
  if (fits.size() > 1) out.alternatives.push_back("eta sign " + std::to_string(fits.back()) + " (eta of the anchor vanishes)");
  return out;
}

}  // namespace cuspcalc
