// SPDX-License-Identifier: Apache-2.0
#include "opalg/model.hpp"

#include <cmath>

#include "opalg/cstar.hpp"
#include "opalg/errors.hpp"

namespace opalg {

namespace {

ComplexMatrix ginibre(Rng& rng, int n) {
  ComplexMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = rng.cnormal();
  return m;
}

ComplexVector random_samples(Rng& rng, std::size_t points) {
  const Eigen::Index n = Eigen::Index(points);
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.cnormal();
  return v;
}

std::vector<Element> matrix_unit_basis(int n) {
  // Column-major order matches Element::coordinates() flattening.
  std::vector<Element> basis;
  basis.reserve(std::size_t(n) * std::size_t(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = 1.0;
      basis.push_back(Element::matrix(std::move(e)));
    }
  return basis;
}

AlgebraModel matrix_model(std::string name, int n, double p, std::string norm_name,
                          std::vector<Element> identities) {
  AlgebraModel m;
  m.name = std::move(name);
  m.kind = Element::Kind::Matrix;
  m.norm_name = std::move(norm_name);
  m.norm = [p](const Element& a) { return schatten_norm(a.mat(), p); };
  m.involution = [](const Element& a) { return star(a); };
  m.module_product = [](const Element& a, const Element& b) { return product(a, b); };
  m.in_core = [](const Element& a) { return a.all_finite(); };
  m.identity = std::move(identities);
  m.basis = [n]() { return matrix_unit_basis(n); };
  m.random_element = [n](Rng& rng) { return Element::matrix(ginibre(rng, n)); };
  m.random_core = m.random_element;
  return m;
}

std::vector<Element> diagonal_projections(int n) {
  std::vector<Element> ids;
  ids.reserve(std::size_t(n));
  for (int m = 1; m <= n; ++m) {
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < m; ++i) p(i, i) = 1.0;
    ids.push_back(Element::matrix(std::move(p)));
  }
  return ids;
}

}  // namespace

AlgebraModel make_schatten_model(int n, double p) {
  if (n < 1) throw std::invalid_argument("make_schatten_model: n >= 1 required");
  if (!(p >= 1.0)) throw std::invalid_argument("make_schatten_model: p >= 1 required");
  return matrix_model("schatten(n=" + std::to_string(n) + ",p=" + std::to_string(p) + ")",
                      n, p, "schatten-" + std::to_string(p), diagonal_projections(n));
}

AlgebraModel make_ncl2_model(int n,
                             std::optional<std::vector<ComplexMatrix>> projections) {
  if (n < 1) throw std::invalid_argument("make_ncl2_model: n >= 1 required");
  std::vector<Element> ids;
  if (projections) {
    for (auto& pm : *projections) {
      if (pm.rows() != n || pm.cols() != n)
        throw InvalidIdentityError("ncl2 identities: wrong dimension");
      ids.push_back(Element::matrix(pm));
    }
    // Nesting (strong idempotency) must hold exactly up to rounding.
    for (std::size_t a = 0; a < ids.size(); ++a)
      for (std::size_t b = a; b < ids.size(); ++b) {
        const double defect =
            (ids[a].mat() * ids[b].mat() - ids[a].mat()).cwiseAbs().maxCoeff();
        if (defect > 1e-12)
          throw InvalidIdentityError("ncl2 identities: not nested (defect " +
                                     std::to_string(defect) + ")");
      }
  } else {
    ids = diagonal_projections(n);
  }
  return matrix_model("ncl2(n=" + std::to_string(n) + ")", n, 2.0, "frobenius",
                      std::move(ids));
}

AlgebraModel make_grid_l2_model(double x_max, std::size_t points, int levels) {
  if (!(x_max > 0.0)) throw std::invalid_argument("make_grid_l2_model: x_max > 0");
  if (levels < 1) throw std::invalid_argument("make_grid_l2_model: levels >= 1");
  const Grid g = Grid::uniform(-x_max, x_max, points);
  const Eigen::VectorXd w = g.weights();
  const Eigen::VectorXd x = g.abscissae();

  AlgebraModel m;
  m.name = "grid_l2(x_max=" + std::to_string(x_max) + ")";
  m.kind = Element::Kind::GridFunc;
  m.norm_name = "l2-trapezoid";
  m.norm = [g](const Element& a) {
    return std::sqrt(trapezoid(g, Eigen::VectorXd(a.samples().cwiseAbs2())));
  };
  m.involution = [](const Element& a) { return star(a); };
  m.module_product = [](const Element& a, const Element& b) { return product(a, b); };
  // Everything on the truncated grid is bounded with compact support in R.
  m.in_core = [](const Element& a) { return a.all_finite(); };
  for (int lvl = 1; lvl <= levels; ++lvl) {
    const double cut = x_max * double(lvl) / double(levels);
    ComplexVector e(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
      e[i] = (std::abs(x[i]) <= cut + 1e-15) ? 1.0 : 0.0;
    m.identity.push_back(Element::grid_func(g, std::move(e)));
  }
  m.basis = [g]() {
    std::vector<Element> basis;
    basis.reserve(g.points);
    for (std::size_t i = 0; i < g.points; ++i) {
      ComplexVector d = ComplexVector::Zero(Eigen::Index(g.points));
      d[Eigen::Index(i)] = 1.0;
      basis.push_back(Element::grid_func(g, std::move(d)));
    }
    return basis;
  };
  m.random_element = [g](Rng& rng) {
    return Element::grid_func(g, random_samples(rng, g.points));
  };
  m.random_core = [g](Rng& rng) {
    // interior support: zero out the outer 10% of samples on each side
    ComplexVector v = random_samples(rng, g.points);
    const Eigen::Index margin = Eigen::Index(g.points / 10) + 1;
    for (Eigen::Index i = 0; i < margin; ++i) {
      v[i] = 0.0;
      v[v.size() - 1 - i] = 0.0;
    }
    return Element::grid_func(g, std::move(v));
  };
  return m;
}

AlgebraModel make_seqfun_model(Grid g, int n) {
  if (n < 1) throw std::invalid_argument("make_seqfun_model: n >= 1 required");
  AlgebraModel m;
  m.name = "seqfun(n=" + std::to_string(n) + ")";
  m.kind = Element::Kind::SeqFunc;
  m.norm_name = "l2(C(Omega))-sup";
  m.norm = [](const Element& a) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(a.components().front().size());
    for (const auto& c : a.components()) acc += c.cwiseAbs2();
    return std::sqrt(acc.maxCoeff());
  };
  m.involution = [](const Element& a) { return star(a); };
  m.module_product = [](const Element& a, const Element& b) { return product(a, b); };
  m.in_core = [](const Element& a) { return a.all_finite(); };
  for (int lvl = 1; lvl <= n; ++lvl) {
    std::vector<ComplexVector> comps;
    comps.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i)
      comps.push_back(i < lvl ? ComplexVector::Ones(Eigen::Index(g.points))
                              : ComplexVector::Zero(Eigen::Index(g.points)));
    m.identity.push_back(Element::seq_func(g, std::move(comps)));
  }
  m.basis = [g, n]() {
    std::vector<Element> basis;
    for (int c = 0; c < n; ++c)
      for (std::size_t i = 0; i < g.points; ++i) {
        std::vector<ComplexVector> comps(std::size_t(n),
                                         ComplexVector::Zero(Eigen::Index(g.points)));
        comps[std::size_t(c)][Eigen::Index(i)] = 1.0;
        basis.push_back(Element::seq_func(g, std::move(comps)));
      }
    return basis;
  };
  m.random_element = [g, n](Rng& rng) {
    std::vector<ComplexVector> comps;
    comps.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) comps.push_back(random_samples(rng, g.points));
    return Element::seq_func(g, std::move(comps));
  };
  m.random_core = m.random_element;
  return m;
}

std::vector<ProjectorStep> projector_sequence(const HermitianMatrix& w, double p,
                                              const std::vector<double>& cutoffs) {
  if (!is_psd(w, 1e-10)) throw std::domain_error("projector_sequence: W must be PSD");
  if (cutoffs.empty()) throw std::invalid_argument("projector_sequence: empty cutoffs");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > 0.0))
      throw std::invalid_argument("projector_sequence: cutoffs must be positive");
    if (i > 0 && !(cutoffs[i] < cutoffs[i - 1]))
      throw std::invalid_argument("projector_sequence: cutoffs must be strictly decreasing");
  }
  const Eigen::Index n = w.dim();
  std::vector<ProjectorStep> steps;
  steps.reserve(cutoffs.size());
  for (double c : cutoffs) {
    SpectralProjection sp = spectral_projection(w, c);
    ProjectorStep step;
    step.cutoff = c;
    step.projection = sp.projection;
    step.rank = sp.rank;
    step.tie_warning = sp.tie_warning;
    const ComplexMatrix tail =
        w.matrix() * (ComplexMatrix::Identity(n, n) - sp.projection);
    step.residual = schatten_norm(tail, p);
    step.excluded_count = int(n) - sp.rank;
    step.bound = std::pow(double(step.excluded_count), 1.0 / p) * c;
    steps.push_back(std::move(step));
  }
  return steps;
}

namespace {

ApproximateIdentityReport identity_report(
    const AlgebraModel& model, const std::vector<Element>& panel,
    const std::vector<std::string>& labels, double tol,
    const std::function<double(const Element&)>& residual_norm) {
  ApproximateIdentityReport rep;
  // strong idempotency of the schedule
  for (std::size_t a = 0; a < model.identity.size(); ++a)
    for (std::size_t b = a; b < model.identity.size(); ++b) {
      const Element prod = model.module_product(model.identity[a], model.identity[b]);
      rep.idempotency_defect =
          std::max(rep.idempotency_defect, max_abs_diff(prod, model.identity[a]));
    }
  rep.pass = rep.idempotency_defect <= 1e-12;

  for (std::size_t i = 0; i < panel.size(); ++i) {
    ApproximateIdentityRow row;
    row.label = i < labels.size() ? labels[i] : ("panel[" + std::to_string(i) + "]");
    for (const Element& e : model.identity) {
      const Element defect = panel[i] - model.module_product(panel[i], e);
      row.residuals.push_back(residual_norm(defect));
    }
    // first index from which the trace is non-increasing (tiny slack for FP)
    row.monotone_from = row.residuals.size() - 1;
    for (std::size_t m = 0; m + 1 < row.residuals.size(); ++m) {
      bool ok = true;
      for (std::size_t k = m; k + 1 < row.residuals.size(); ++k)
        if (row.residuals[k + 1] > row.residuals[k] + 1e-12) { ok = false; break; }
      if (ok) { row.monotone_from = m; break; }
    }
    row.final_residual = row.residuals.back();
    row.pass = row.final_residual <= tol;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace

ApproximateIdentityReport check_approximate_identity(
    const AlgebraModel& model, const std::vector<Element>& panel,
    const std::vector<std::string>& labels, double tol) {
  return identity_report(model, panel, labels, tol,
                         [&model](const Element& d) { return model.norm(d); });
}

ApproximateIdentityReport check_approximate_identity_form(
    const AlgebraModel& model, const FormEvaluator& s,
    const std::vector<Element>& panel, const std::vector<std::string>& labels,
    double tol) {
  return identity_report(model, panel, labels, tol, [&s](const Element& d) {
    return std::sqrt(std::max(0.0, cnorm(s(d, d))));
  });
}

}  // namespace opalg
