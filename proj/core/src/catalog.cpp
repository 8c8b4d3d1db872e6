// SPDX-License-Identifier: Apache-2.0
#include "opalg/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "opalg/errors.hpp"

namespace opalg {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Matrix-function arguments pass through; scalar grid functions act as
// scalar multiples of the identity block.
ComplexMatrix block_arg(const Element& e, std::size_t j, Eigen::Index d) {
  if (e.kind() == Element::Kind::MatFunc) return e.matrices()[j];
  if (e.kind() == Element::Kind::GridFunc)
    return e.samples()[Eigen::Index(j)] * ComplexMatrix::Identity(d, d);
  throw std::invalid_argument("operator kernel: grid-sampled argument required");
}

double bochner_l2_norm(const Grid& g, const Element& e) {
  Eigen::VectorXd sq(Eigen::Index(g.points));
  if (e.kind() == Element::Kind::MatFunc) {
    for (std::size_t j = 0; j < g.points; ++j) {
      const double v = operator_norm(e.matrices()[j]);
      sq[Eigen::Index(j)] = v * v;
    }
  } else if (e.kind() == Element::Kind::GridFunc) {
    sq = e.samples().cwiseAbs2();
  } else {
    throw std::invalid_argument("bochner norm: grid-sampled argument required");
  }
  return std::sqrt(std::max(0.0, trapezoid(g, sq)));
}

}  // namespace

KernelSpec KernelSpec::scalar_from(Grid x, Grid t,
                                   const std::function<Complex(double, double)>& k) {
  KernelSpec spec;
  spec.kind = Kind::Scalar;
  spec.x_grid = x;
  spec.t_grid = t;
  spec.scalar_samples.resize(Eigen::Index(x.points), Eigen::Index(t.points));
  bool nonneg = true;
  for (std::size_t i = 0; i < x.points; ++i)
    for (std::size_t j = 0; j < t.points; ++j) {
      const Complex v = k(x.point(i), t.point(j));
      require(std::isfinite(v.real()) && std::isfinite(v.imag()),
              "kernel sample not finite");
      spec.scalar_samples(Eigen::Index(i), Eigen::Index(j)) = v;
      if (v.real() < 0.0 || std::abs(v.imag()) > 1e-14) nonneg = false;
    }
  spec.positive_action = nonneg;
  return spec;
}

KernelSpec KernelSpec::operator_from(Grid x, Grid t, Eigen::Index dim,
                                     const std::function<ComplexMatrix(double, double)>& k,
                                     bool positive_action) {
  require(dim >= 1, "kernel block dimension must be >= 1");
  KernelSpec spec;
  spec.kind = Kind::Operator;
  spec.x_grid = x;
  spec.t_grid = t;
  spec.dim = dim;
  spec.positive_action = positive_action;
  spec.operator_samples.reserve(x.points * t.points);
  for (std::size_t i = 0; i < x.points; ++i)
    for (std::size_t j = 0; j < t.points; ++j) {
      ComplexMatrix b = k(x.point(i), t.point(j));
      require(b.rows() == dim && b.cols() == dim, "kernel block has wrong shape");
      require(b.allFinite(), "kernel sample not finite");
      spec.operator_samples.push_back(std::move(b));
    }
  return spec;
}

void KernelSpec::sample_dx(const std::function<Complex(double, double)>& dk) {
  require(kind == Kind::Scalar, "sample_dx: scalar kernel required");
  Eigen::MatrixXcd d(Eigen::Index(x_grid.points), Eigen::Index(t_grid.points));
  for (std::size_t i = 0; i < x_grid.points; ++i)
    for (std::size_t j = 0; j < t_grid.points; ++j)
      d(Eigen::Index(i), Eigen::Index(j)) = dk(x_grid.point(i), t_grid.point(j));
  scalar_dx = std::move(d);
}

void KernelSpec::sample_dx_blocks(const std::function<ComplexMatrix(double, double)>& dk) {
  require(kind == Kind::Operator, "sample_dx_blocks: operator kernel required");
  std::vector<ComplexMatrix> d;
  d.reserve(x_grid.points * t_grid.points);
  for (std::size_t i = 0; i < x_grid.points; ++i)
    for (std::size_t j = 0; j < t_grid.points; ++j) {
      ComplexMatrix b = dk(x_grid.point(i), t_grid.point(j));
      require(b.rows() == dim && b.cols() == dim, "derivative block has wrong shape");
      d.push_back(std::move(b));
    }
  operator_dx = std::move(d);
}

Complex KernelSpec::at(std::size_t ix, std::size_t it) const {
  return scalar_samples(Eigen::Index(ix), Eigen::Index(it));
}

const ComplexMatrix& KernelSpec::block(std::size_t ix, std::size_t it) const {
  return operator_samples[ix * t_grid.points + it];
}

double KernelSpec::sup_norm() const {
  if (kind == Kind::Scalar) return scalar_samples.cwiseAbs().maxCoeff();
  double best = 0.0;
  for (const ComplexMatrix& b : operator_samples)
    best = std::max(best, operator_norm(b));
  return best;
}

PositiveLinearMap weighted_sum_map(const std::vector<Eigen::VectorXd>& w,
                                   const AlgebraModel& model) {
  require(model.kind == Element::Kind::SeqFunc, "weighted_sum_map: sequence model required");
  const Grid g = model.identity.front().grid();
  const std::size_t n = model.identity.front().components().size();
  require(w.size() == n, "weighted_sum_map: weight count mismatch");
  double sup_l2 = 0.0;
  for (const Eigen::VectorXd& wn : w) {
    require(std::size_t(wn.size()) == g.points, "weighted_sum_map: weight length mismatch");
    require(wn.minCoeff() >= 0.0, "weighted_sum_map: negative weight sample");
  }
  for (std::size_t j = 0; j < g.points; ++j) {
    double sq = 0.0;
    for (const Eigen::VectorXd& wn : w) sq += wn[Eigen::Index(j)] * wn[Eigen::Index(j)];
    sup_l2 = std::max(sup_l2, sq);
  }

  PositiveLinearMap omega;
  omega.name = "weighted-sum";
  omega.codomain = CodomainDesc{CodomainDesc::Kind::Func, g, 1};
  omega.apply = [w, g, n](const Element& f) {
    require(f.kind() == Element::Kind::SeqFunc && f.components().size() == n &&
                f.grid() == g,
            "weighted-sum: shape mismatch");
    ComplexVector acc = ComplexVector::Zero(Eigen::Index(g.points));
    for (std::size_t i = 0; i < n; ++i)
      acc += w[i].cast<Complex>().cwiseProduct(f.components()[i]);
    return CStarValue::func(g, std::move(acc));
  };
  omega.domain_norm = model.norm;
  omega.domain_norm_name = model.norm_name;
  omega.declared_bound = std::sqrt(sup_l2);
  return omega;
}

PosSesqForm weighted_form(const Eigen::VectorXd& v, const AlgebraModel& model) {
  require(model.kind == Element::Kind::GridFunc, "weighted_form: grid model required");
  const Grid g = model.identity.front().grid();
  require(std::size_t(v.size()) == g.points, "weighted_form: weight length mismatch");
  auto eval = [v, g](const Element& f, const Element& h) {
    require(f.grid() == g && h.grid() == g, "weighted form: grid mismatch");
    const ComplexVector prod =
        f.samples().cwiseProduct(h.samples().conjugate()).cwiseProduct(v.cast<Complex>());
    return CStarValue::scalar(trapezoid(g, prod));
  };
  return PosSesqForm("weighted-l2", CodomainDesc{CodomainDesc::Kind::Scalar, {}, 1},
                     std::move(eval), v.cwiseAbs().maxCoeff());
}

PosSesqForm kernel_form(const KernelSpec& spec) {
  require(spec.kind == KernelSpec::Kind::Scalar, "kernel_form: scalar kernel required");
  const Grid xg = spec.x_grid;
  const Grid tg = spec.t_grid;
  const Eigen::MatrixXcd k = spec.scalar_samples;
  const ComplexVector qw = tg.weights().cast<Complex>();
  auto eval = [xg, tg, k, qw](const Element& f, const Element& g) {
    require(f.grid() == tg && g.grid() == tg, "kernel form: grid mismatch");
    const ComplexVector h =
        f.samples().cwiseProduct(g.samples().conjugate()).cwiseProduct(qw);
    return CStarValue::func(xg, ComplexVector(k * h));
  };
  return PosSesqForm("kernel-form", CodomainDesc{CodomainDesc::Kind::Func, xg, 1},
                     std::move(eval), spec.sup_norm());
}

PositiveLinearMap theta_map(const KernelSpec& spec, const Eigen::VectorXd& w) {
  require(spec.kind == KernelSpec::Kind::Scalar, "theta_map: scalar kernel required");
  require(std::size_t(w.size()) == spec.t_grid.points, "theta_map: weight length mismatch");
  const Grid xg = spec.x_grid;
  const Grid tg = spec.t_grid;
  const Eigen::MatrixXcd k = spec.scalar_samples;
  const ComplexVector wq = w.cwiseProduct(tg.weights()).cast<Complex>();

  PositiveLinearMap omega;
  omega.name = "theta";
  omega.codomain = CodomainDesc{CodomainDesc::Kind::Func, xg, 1};
  omega.apply = [xg, tg, k, wq](const Element& f) {
    require(f.kind() == Element::Kind::GridFunc && f.grid() == tg,
            "theta: grid function on the kernel t-grid required");
    return CStarValue::func(xg, ComplexVector(k * f.samples().cwiseProduct(wq)));
  };
  omega.domain_norm = [tg](const Element& f) {
    return std::sqrt(std::max(0.0, trapezoid(tg, Eigen::VectorXd(f.samples().cwiseAbs2()))));
  };
  omega.domain_norm_name = "l2-trapezoid";
  omega.declared_bound =
      (spec.scalar_samples.cwiseAbs() * w.cwiseAbs().asDiagonal()).maxCoeff();
  return omega;
}

AlgebraModel make_operator_kernel_model(Grid t_grid, int dim) {
  require(dim >= 1, "make_operator_kernel_model: dim >= 1 required");
  const int levels = 6;
  AlgebraModel m;
  m.name = "operator-kernel(d=" + std::to_string(dim) + ")";
  m.kind = Element::Kind::MatFunc;
  m.norm_name = "bochner-l2";
  m.norm = [t_grid](const Element& e) { return bochner_l2_norm(t_grid, e); };
  m.involution = [](const Element& a) { return star(a); };
  m.module_product = [](const Element& a, const Element& b) { return product(a, b); };
  m.in_core = [](const Element& a) {
    return a.kind() == Element::Kind::MatFunc && a.all_finite();
  };
  // Nested indicator windows about the grid center; the top window covers
  // the whole truncated line, so it acts as the exact unit.
  const double center = 0.5 * (t_grid.start + t_grid.end);
  const double half = 0.5 * (t_grid.end - t_grid.start);
  for (int lvl = 1; lvl <= levels; ++lvl) {
    const double radius = half * double(lvl) / double(levels) + 1e-15;
    ComplexVector ind = ComplexVector::Zero(Eigen::Index(t_grid.points));
    for (std::size_t j = 0; j < t_grid.points; ++j)
      if (std::abs(t_grid.point(j) - center) <= radius) ind[Eigen::Index(j)] = 1.0;
    m.identity.push_back(Element::grid_func(t_grid, std::move(ind)));
  }
  m.basis = [t_grid, dim]() {
    std::vector<Element> b;
    b.reserve(t_grid.points * std::size_t(dim) * std::size_t(dim));
    for (std::size_t q = 0; q < t_grid.points; ++q)
      for (Eigen::Index c = 0; c < dim; ++c)
        for (Eigen::Index r = 0; r < dim; ++r) {
          std::vector<ComplexMatrix> mats(t_grid.points, ComplexMatrix::Zero(dim, dim));
          mats[q](r, c) = 1.0;
          b.push_back(Element::mat_func(t_grid, std::move(mats)));
        }
    return b;
  };
  // Elements sampled for invariance are the scalar multipliers: those are
  // what the identity S(a f, g) = S(f, a* g) quantifies over here.
  m.random_element = [t_grid](Rng& rng) {
    ComplexVector s(Eigen::Index(t_grid.points));
    for (Eigen::Index j = 0; j < s.size(); ++j) s[j] = rng.cnormal();
    return Element::grid_func(t_grid, std::move(s));
  };
  m.random_core = [t_grid, dim](Rng& rng) {
    std::vector<ComplexMatrix> mats;
    mats.reserve(t_grid.points);
    for (std::size_t j = 0; j < t_grid.points; ++j) {
      ComplexMatrix b(dim, dim);
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) b(r, c) = rng.cnormal();
      mats.push_back(std::move(b));
    }
    return Element::mat_func(t_grid, std::move(mats));
  };
  return m;
}

PosSesqForm operator_kernel_form(const KernelSpec& spec) {
  require(spec.kind == KernelSpec::Kind::Operator, "operator_kernel_form: operator kernel required");
  const Grid xg = spec.x_grid;
  const Grid tg = spec.t_grid;
  const Eigen::Index d = spec.dim;
  const Eigen::VectorXd qw = tg.weights();
  const std::vector<ComplexMatrix> blocks = spec.operator_samples;
  auto eval = [xg, tg, d, qw, blocks](const Element& f, const Element& g) {
    require(f.grid() == tg && g.grid() == tg, "operator kernel form: grid mismatch");
    std::vector<ComplexMatrix> out;
    out.reserve(xg.points);
    for (std::size_t i = 0; i < xg.points; ++i) {
      ComplexMatrix acc = ComplexMatrix::Zero(d, d);
      for (std::size_t j = 0; j < tg.points; ++j)
        acc += qw[Eigen::Index(j)] * blocks[i * tg.points + j] *
               (block_arg(f, j, d) * block_arg(g, j, d).adjoint());
      out.push_back(std::move(acc));
    }
    return CStarValue::mat_func(xg, std::move(out));
  };
  return PosSesqForm("operator-kernel-form",
                     CodomainDesc{CodomainDesc::Kind::MatFunc, xg, int(d)},
                     std::move(eval), spec.sup_norm());
}

DerivativeReport derivative_check(const KernelSpec& spec, const Element& f,
                                  const Element& g, double tol) {
  DerivativeReport rep;
  const Grid& xg = spec.x_grid;
  const Grid& tg = spec.t_grid;
  const Eigen::VectorXd qw = tg.weights();
  rep.spacing = xg.spacing();

  if (spec.kind == KernelSpec::Kind::Operator) {
    require(spec.operator_dx.has_value(), "derivative_check: no derivative samples");
    const CStarValue sk = operator_kernel_form(spec)(f, g);
    const std::vector<ComplexMatrix>& vals = sk.matrices();
    for (std::size_t i = 1; i + 1 < xg.points; ++i) {
      const ComplexMatrix central = (vals[i + 1] - vals[i - 1]) / (2.0 * rep.spacing);
      ComplexMatrix target = ComplexMatrix::Zero(spec.dim, spec.dim);
      for (std::size_t j = 0; j < tg.points; ++j)
        target += qw[Eigen::Index(j)] * (*spec.operator_dx)[i * tg.points + j] *
                  (block_arg(f, j, spec.dim) * block_arg(g, j, spec.dim).adjoint());
      rep.discrepancies.push_back(operator_norm(central - target));
    }
  } else {
    require(spec.scalar_dx.has_value(), "derivative_check: no derivative samples");
    const CStarValue sk = kernel_form(spec)(f, g);
    const ComplexVector& vals = sk.samples();
    const ComplexVector h =
        f.samples().cwiseProduct(g.samples().conjugate()).cwiseProduct(qw.cast<Complex>());
    const ComplexVector targets = *spec.scalar_dx * h;
    for (std::size_t i = 1; i + 1 < xg.points; ++i) {
      const Complex central =
          (vals[Eigen::Index(i + 1)] - vals[Eigen::Index(i - 1)]) / (2.0 * rep.spacing);
      rep.discrepancies.push_back(std::abs(central - targets[Eigen::Index(i)]));
    }
  }
  for (double v : rep.discrepancies) rep.max_discrepancy = std::max(rep.max_discrepancy, v);
  rep.pass = rep.max_discrepancy <= tol;
  return rep;
}

OperatorKernelMap omega_k_map(const KernelSpec& spec, double c0_tol) {
  require(spec.kind == KernelSpec::Kind::Operator, "omega_k_map: operator kernel required");
  const Grid xg = spec.x_grid;
  const Grid tg = spec.t_grid;
  const Eigen::Index d = spec.dim;
  const Eigen::VectorXd qw = tg.weights();
  const std::vector<ComplexMatrix> blocks = spec.operator_samples;

  OperatorKernelMap out;
  out.map.name = "omega-K";
  out.map.codomain = CodomainDesc{CodomainDesc::Kind::MatFunc, xg, int(d)};
  out.map.apply = [xg, tg, d, qw, blocks](const Element& a) {
    require(a.grid() == tg, "omega-K: grid mismatch");
    std::vector<ComplexMatrix> vals;
    vals.reserve(xg.points);
    for (std::size_t i = 0; i < xg.points; ++i) {
      ComplexMatrix acc = ComplexMatrix::Zero(d, d);
      for (std::size_t j = 0; j < tg.points; ++j)
        acc += qw[Eigen::Index(j)] * blocks[i * tg.points + j] * block_arg(a, j, d);
      vals.push_back(std::move(acc));
    }
    return CStarValue::mat_func(xg, std::move(vals));
  };
  out.map.domain_norm = [tg](const Element& e) { return bochner_l2_norm(tg, e); };
  out.map.domain_norm_name = "bochner-l2";
  out.map.declared_bound = spec.sup_norm();

  for (std::size_t j = 0; j < tg.points; ++j) {
    out.edge_value = std::max(out.edge_value, operator_norm(spec.block(0, j)));
    out.edge_value =
        std::max(out.edge_value, operator_norm(spec.block(xg.points - 1, j)));
  }
  out.c0_range = out.edge_value < c0_tol;
  return out;
}

SchattenTraceMap schatten_trace_map(const std::vector<double>& lambda,
                                    const std::vector<Eigen::VectorXd>& g_family,
                                    Grid t_grid, const AlgebraModel& model,
                                    double p) {
  require(p > 2.0, "schatten_trace_map: p > 2 required");
  require(!lambda.empty() && lambda.size() == g_family.size(),
          "schatten_trace_map: weight/family size mismatch");
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    require(lambda[j] > 0.0, "schatten_trace_map: lambda must be positive");
    if (j > 0)
      require(lambda[j] < lambda[j - 1],
              "schatten_trace_map: lambda must be strictly decreasing");
  }
  require(model.kind == Element::Kind::Matrix, "schatten_trace_map: matrix model required");
  const Eigen::Index n = model.identity.front().mat().rows();
  require(Eigen::Index(lambda.size()) <= n, "schatten_trace_map: too many weights");
  for (std::size_t j = 0; j < g_family.size(); ++j) {
    require(std::size_t(g_family[j].size()) == t_grid.points,
            "schatten_trace_map: family sample length mismatch");
    require(g_family[j].minCoeff() >= -1e-12, "schatten_trace_map: family must be nonnegative");
    if (j > 0)
      require((g_family[j - 1] - g_family[j]).minCoeff() >= -1e-12,
              "schatten_trace_map: family must be nested");
  }

  SchattenTraceMap out;
  out.t_grid = t_grid;
  out.family_note =
      "finite truncation of a weight family summable in both l^(p/(p-1)) and l^(p/(p-2))";
  const double r = p / (p - 2.0);
  double bound = 0.0;
  for (std::size_t t = 0; t < t_grid.points; ++t) {
    ComplexMatrix wt = ComplexMatrix::Zero(n, n);
    double sum_r = 0.0;
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      const double entry = lambda[j] * std::max(0.0, g_family[j][Eigen::Index(t)]);
      wt(Eigen::Index(j), Eigen::Index(j)) = entry;
      sum_r += std::pow(entry, r);
    }
    bound = std::max(bound, std::pow(sum_r, 1.0 / r));
    out.weights.push_back(std::move(wt));
  }

  out.map.name = "schatten-trace";
  out.map.codomain = CodomainDesc{CodomainDesc::Kind::Func, t_grid, 1};
  const std::vector<ComplexMatrix> weights = out.weights;
  out.map.apply = [t_grid, weights, n](const Element& a) {
    require(a.kind() == Element::Kind::Matrix && a.mat().rows() == n,
            "schatten-trace: matrix dimension mismatch");
    ComplexVector vals(Eigen::Index(t_grid.points));
    for (std::size_t t = 0; t < t_grid.points; ++t)
      vals[Eigen::Index(t)] = (a.mat() * weights[t]).trace();
    return CStarValue::func(t_grid, std::move(vals));
  };
  out.map.domain_norm = [p](const Element& a) { return schatten_norm(a.mat(), p); };
  out.map.domain_norm_name = "schatten-p";
  out.map.schatten_p = p;
  out.map.declared_bound = bound;
  return out;
}

PositiveLinearMap trace_map(const HermitianMatrix& w, const AlgebraModel& model,
                            std::optional<double> schatten_p) {
  require(model.kind == Element::Kind::Matrix, "trace_map: matrix model required");
  if (!is_psd(w)) throw std::domain_error("trace_map: W must be PSD");
  const ComplexMatrix wm = w.matrix();
  PositiveLinearMap omega;
  omega.name = "trace-weight";
  omega.codomain = CodomainDesc{CodomainDesc::Kind::Scalar, {}, 1};
  omega.apply = [wm](const Element& a) {
    return CStarValue::scalar((a.mat() * wm).trace());
  };
  omega.trace_weight = wm;
  if (schatten_p) {
    const double p = *schatten_p;
    omega.domain_norm = [p](const Element& a) { return schatten_norm(a.mat(), p); };
    omega.domain_norm_name = "schatten-p";
    omega.schatten_p = p;
    if (p > 2.0) omega.declared_bound = schatten_norm(wm, p / (p - 2.0));
  } else {
    omega.domain_norm = [](const Element& a) { return operator_norm(a.mat()); };
    omega.domain_norm_name = "operator";
    omega.declared_bound = wm.trace().real();
  }
  return omega;
}

Ncl2Map ncl2_map(const HermitianMatrix& w, double cutoff, const KernelSpec& k) {
  require(k.kind == KernelSpec::Kind::Scalar, "ncl2_map: scalar kernel required");
  require(k.positive_action, "ncl2_map: kernel must be nonnegative");
  if (!is_psd(w)) throw std::domain_error("ncl2_map: W must be PSD");

  Ncl2Map out;
  out.w = w.matrix();
  out.x_grid = k.x_grid;
  const SpectralProjection sp = spectral_projection(w, cutoff);
  out.projection = sp.projection;
  out.tie_warning = sp.tie_warning;
  const ComplexMatrix wp_raw = w.matrix() * sp.projection;
  const HermitianMatrix wp(0.5 * (wp_raw + wp_raw.adjoint().eval()));
  out.tail = w.matrix() - wp.matrix();

  const double top = operator_norm(wp.matrix());
  require(k.t_grid.start <= 1e-12 && k.t_grid.end >= top - 1e-12,
          "ncl2_map: kernel t-grid must cover [0, ||WP||]");

  const Eigen::Index n = w.dim();
  for (std::size_t i = 0; i < k.x_grid.points; ++i) {
    const Eigen::VectorXd row = k.scalar_samples.row(Eigen::Index(i)).real().transpose();
    const Grid tg = k.t_grid;
    const HermitianMatrix wx =
        mat_fun(wp, [tg, row](double ev) { return interp_linear(tg, row, ev); });
    out.densities.push_back(out.tail + wx.matrix());
  }

  out.map.name = "ncl2";
  out.map.codomain = CodomainDesc{CodomainDesc::Kind::Func, out.x_grid, 1};
  const std::vector<ComplexMatrix> densities = out.densities;
  const Grid xg = out.x_grid;
  out.map.apply = [densities, xg, n](const Element& a) {
    require(a.kind() == Element::Kind::Matrix && a.mat().rows() == n,
            "ncl2: matrix dimension mismatch");
    ComplexVector vals(Eigen::Index(xg.points));
    for (std::size_t i = 0; i < xg.points; ++i)
      vals[Eigen::Index(i)] = (a.mat() * densities[i]).trace();
    return CStarValue::func(xg, std::move(vals));
  };
  out.map.domain_norm = [](const Element& a) { return frobenius_norm(a.mat()); };
  out.map.domain_norm_name = "frobenius";
  double bound = 0.0;
  for (const ComplexMatrix& d : out.densities) bound = std::max(bound, operator_norm(d));
  out.map.declared_bound = bound;
  return out;
}

ComplexMatrix theta_gp(const Ncl2Map& m, const Element& x,
                       const std::vector<ComplexMatrix>& panel) {
  require(x.kind() == Element::Kind::Matrix && x.mat().rows() == m.w.rows(),
          "theta_gp: matrix dimension mismatch");
  require(panel.size() == m.x_grid.points, "theta_gp: one panel matrix per grid sample");
  const Eigen::Index pd = panel.front().rows();
  for (const ComplexMatrix& a : panel)
    require(a.rows() == pd && a.cols() == pd, "theta_gp: panel blocks must be square and uniform");
  const Eigen::VectorXd qw = m.x_grid.weights();
  ComplexMatrix acc = ComplexMatrix::Zero(pd, pd);
  for (std::size_t i = 0; i < panel.size(); ++i)
    acc += qw[Eigen::Index(i)] * (x.mat() * m.densities[i]).trace() * panel[i];
  return acc;
}

Element tilde_theta_apply(const Ncl2Map& m, const Element& x, const Element& seq) {
  require(seq.kind() == Element::Kind::SeqFunc && seq.grid() == m.x_grid,
          "tilde_theta: sequence over the map's grid required");
  const CStarValue wx = m.map.apply(x);
  std::vector<ComplexVector> comps;
  comps.reserve(seq.components().size());
  for (const ComplexVector& c : seq.components())
    comps.push_back(wx.samples().cwiseProduct(c));
  return Element::seq_func(m.x_grid, std::move(comps));
}

AdjointabilityReport check_tilde_adjoint(const Ncl2Map& m,
                                         const AlgebraModel& matrix_model,
                                         const AlgebraModel& seq_model, Rng& rng,
                                         int samples, double tol) {
  require(seq_model.kind == Element::Kind::SeqFunc &&
              seq_model.identity.front().grid() == m.x_grid,
          "check_tilde_adjoint: sequence model must live on the map's grid");
  AdjointabilityReport rep;
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const Element x = matrix_model.random_element(rng);
    const Element f = seq_model.random_element(rng);
    const Element g = seq_model.random_element(rng);
    const Element tf = tilde_theta_apply(m, x, f);
    const Element tg = tilde_theta_apply(m, star(x), g);
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    for (std::size_t nix = 0; nix < f.components().size(); ++nix) {
      lhs += trapezoid(m.x_grid, ComplexVector(tf.components()[nix].cwiseProduct(
                                      g.components()[nix].conjugate())));
      rhs += trapezoid(m.x_grid, ComplexVector(f.components()[nix].cwiseProduct(
                                      tg.components()[nix].conjugate())));
    }
    rep.max_defect = std::max(rep.max_defect, std::abs(lhs - rhs));
  }
  rep.pass = rep.max_defect <= tol;
  return rep;
}

PosSesqForm induced_form(const PositiveLinearMap& omega, const AlgebraModel& model,
                         std::string name) {
  auto eval = [apply = omega.apply, inv = model.involution,
               prod = model.module_product](const Element& a, const Element& b) {
    return apply(prod(inv(b), a));
  };
  return PosSesqForm(std::move(name), omega.codomain, std::move(eval),
                     omega.declared_bound);
}

namespace {

BoundReport bound_report_impl(const std::function<double(const Element&, const Element&)>& lhs,
                              const std::function<double(const Element&)>& norm,
                              double bound, const AlgebraModel& model, Rng& rng,
                              int samples, double rtol) {
  BoundReport rep;
  rep.bound = bound;
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const Element d = model.random_core(rng);
    const Element c = model.random_core(rng);
    const double scale = norm(d) * norm(c);
    if (scale < 1e-14) continue;
    rep.max_ratio = std::max(rep.max_ratio, lhs(c, d) / scale);
  }
  rep.pass = rep.max_ratio <= bound * (1.0 + rtol) + 1e-15;
  return rep;
}

}  // namespace

BoundReport check_declared_bound(const PositiveLinearMap& omega,
                                 const AlgebraModel& model, Rng& rng, int samples,
                                 double rtol) {
  require(omega.declared_bound.has_value(), "check_declared_bound: no declared bound");
  const auto norm = omega.domain_norm ? omega.domain_norm : model.norm;
  auto lhs = [&omega, &model](const Element& c, const Element& d) {
    return cnorm(omega.apply(model.module_product(model.involution(d), c)));
  };
  return bound_report_impl(lhs, norm, *omega.declared_bound, model, rng, samples, rtol);
}

BoundReport check_declared_bound(const PosSesqForm& s, const AlgebraModel& model,
                                 Rng& rng, int samples, double rtol) {
  require(s.declared_bound().has_value(), "check_declared_bound: no declared bound");
  auto lhs = [&s](const Element& c, const Element& d) { return cnorm(s(c, d)); };
  return bound_report_impl(lhs, model.norm, *s.declared_bound(), model, rng, samples, rtol);
}

}  // namespace opalg
