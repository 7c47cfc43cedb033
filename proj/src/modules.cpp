#include "descentkit/modules.hpp"

#include <algorithm>

namespace descentkit {

Module::Module(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action,
               std::optional<std::vector<Degree>> grading)
    : algebra_(std::move(algebra)), dim_(dim), action_(std::move(action)), grading_(std::move(grading)) {
  if (!algebra_) fail(Errc::validation_failed, "module needs an algebra");
  if (action_.size() != algebra_->dim()) fail(Errc::dimension_mismatch, "one action matrix per basis element");
  for (const auto& m : action_)
    if (m.rows() != dim_ || m.cols() != dim_ || m.field() != algebra_->field())
      fail(Errc::dimension_mismatch, "action matrix shape or field mismatch");
  if (grading_ && grading_->size() != dim_) fail(Errc::dimension_mismatch, "grading length != dim");
}

Matrix Module::action_of(const Vec& algebra_elem) const {
  if (algebra_elem.size() != algebra_->dim()) fail(Errc::dimension_mismatch, "action_of: length mismatch");
  Matrix m(algebra_->field(), dim_, dim_);
  for (std::size_t i = 0; i < algebra_elem.size(); ++i)
    if (!algebra_elem[i].is_zero()) m = m + action_[i].scaled(algebra_elem[i]);
  return m;
}

void check_same_algebra(const Module& a, const Module& b) {
  if (!algebra_equal(*a.algebra(), *b.algebra()))
    fail(Errc::algebra_mismatch, "modules live over different algebras");
}

Report validate_module(const Module& m) {
  Report rep;
  const Algebra& a = *m.algebra();
  if (m.action_of(a.unit()) != Matrix::identity(a.field(), m.dim()))
    rep.add("module.unit", {}, "unit does not act as identity");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Matrix lhs = m.action_of(a.left_mul(i).col(j));  // action of e_i e_j
      Matrix rhs = m.action(j) * m.action(i);
      if (lhs != rhs) rep.add("module.law", {i, j}, "action of e_i e_j != R_j R_i");
    }
  if (m.is_graded()) {
    if (!a.is_graded()) {
      rep.add("module.grading", {}, "graded module over ungraded algebra");
    } else {
      const auto& mdeg = *m.grading();
      const auto& adeg = a.grading()->degrees;
      std::size_t len = a.grading()->signature.length();
      for (std::size_t u = 0; u < m.dim(); ++u)
        if (mdeg[u].size() != len) rep.add("module.grading.shape", {u}, "degree length mismatch");
      if (rep.ok())
        for (std::size_t i = 0; i < a.dim(); ++i)
          for (std::size_t j = 0; j < m.dim(); ++j)
            for (std::size_t k = 0; k < m.dim(); ++k)
              if (!m.action(i).at(k, j).is_zero() && mdeg[k] != degree_add(mdeg[j], adeg[i]))
                rep.add("module.grading.action", {i, j, k}, "action entry breaks degrees");
    }
  }
  return rep;
}

Module free_module(AlgebraPtr a, std::size_t r, const std::vector<Degree>* shifts) {
  std::size_t n = a->dim();
  std::size_t dim = r * n;
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix m(a->field(), dim, dim);
    const Matrix& reg = a->right_mul(i);
    for (std::size_t s = 0; s < r; ++s)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (!reg.at(x, y).is_zero()) m.at(s * n + x, s * n + y) = reg.at(x, y);
    action.push_back(std::move(m));
  }
  std::optional<std::vector<Degree>> grading;
  if (a->is_graded()) {
    Degree zero(a->grading()->signature.length(), 0);
    std::vector<Degree> deg;
    for (std::size_t s = 0; s < r; ++s) {
      const Degree& shift = shifts ? (*shifts)[s] : zero;
      for (std::size_t x = 0; x < n; ++x)
        deg.push_back(degree_add(shift, a->grading()->degrees[x]));
    }
    grading = std::move(deg);
  }
  return Module(a, dim, std::move(action), std::move(grading));
}

Report validate_module_map(const ModuleMap& h) {
  Report rep;
  check_same_algebra(h.source, h.target);
  if (h.matrix.rows() != h.target.dim() || h.matrix.cols() != h.source.dim()) {
    rep.add("map.shape", {}, "matrix shape is not dim(target) x dim(source)");
    return rep;
  }
  for (std::size_t i = 0; i < h.source.algebra()->dim(); ++i)
    if (h.matrix * h.source.action(i) != h.target.action(i) * h.matrix)
      rep.add("map.linearity", {i}, "does not commute with action of e_i");
  return rep;
}

BaseChangeResult base_change(const AlgebraMap& f, const Module& m) {
  const Algebra& a = *f.source;
  const Algebra& b = *f.target;
  if (!algebra_equal(*m.algebra(), a)) fail(Errc::algebra_mismatch, "module is not over the map source");
  FieldDescriptor fd = b.field();
  std::size_t dm = m.dim(), db = b.dim();
  std::size_t ambient = dm * db;

  std::vector<Vec> rels;
  rels.reserve(dm * a.dim() * db);
  for (std::size_t u = 0; u < dm; ++u)
    for (std::size_t ai = 0; ai < a.dim(); ++ai) {
      Vec mu_a = m.action(ai).col(u);            // m_u * e_ai
      Matrix lf = b.left_mul_by(f.image_of_basis(ai));
      for (std::size_t j = 0; j < db; ++j) {
        Vec rel = zero_vec(fd, ambient);
        for (std::size_t w = 0; w < dm; ++w)
          if (!mu_a[w].is_zero()) rel[w * db + j] += mu_a[w];
        Vec prod = lf.col(j);                    // f(e_ai) * b_j
        for (std::size_t t = 0; t < db; ++t)
          if (!prod[t].is_zero()) rel[u * db + t] -= prod[t];
        rels.push_back(std::move(rel));
      }
    }
  Subspace relsp = Subspace::from_span(fd, ambient, rels);
  QuotientData qd = quotient_space(ambient, relsp);
  std::size_t dq = qd.dim();

  std::vector<Matrix> action;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    Matrix act(fd, dq, dq);
    for (std::size_t t = 0; t < dq; ++t) {
      std::size_t u = qd.complement[t] / db, j = qd.complement[t] % db;
      Vec img = zero_vec(fd, ambient);
      Vec bj_ei = b.right_mul(i).col(j);  // b_j * e_i
      for (std::size_t x = 0; x < db; ++x)
        if (!bj_ei[x].is_zero()) img[u * db + x] = bj_ei[x];
      act.set_col(t, qd.project.apply(img));
    }
    action.push_back(std::move(act));
  }

  Matrix unit_map(fd, dq, dm);
  for (std::size_t u = 0; u < dm; ++u) {
    Vec img = zero_vec(fd, ambient);
    for (std::size_t j = 0; j < db; ++j)
      if (!b.unit()[j].is_zero()) img[u * db + j] = b.unit()[j];
    unit_map.set_col(u, qd.project.apply(img));
  }

  std::optional<std::vector<Degree>> grading;
  if (m.is_graded() && a.is_graded() && b.is_graded() &&
      a.grading()->signature == b.grading()->signature) {
    std::vector<Degree> amb_deg;
    amb_deg.reserve(ambient);
    for (std::size_t u = 0; u < dm; ++u)
      for (std::size_t j = 0; j < db; ++j)
        amb_deg.push_back(degree_add((*m.grading())[u], b.grading()->degrees[j]));
    bool homog = true;
    for (std::size_t s = 0; s < relsp.dim() && homog; ++s)
      homog = is_homogeneous(relsp.basis_vec(s), amb_deg);
    if (homog) {
      std::vector<Degree> deg;
      for (std::size_t t : qd.complement) deg.push_back(amb_deg[t]);
      grading = std::move(deg);
    }
  }

  BaseChangeResult out{Module(f.target, dq, std::move(action), std::move(grading)),
                       std::move(unit_map), std::move(qd)};
  return out;
}

Module restrict_scalars(const AlgebraMap& f, const Module& n) {
  if (!algebra_equal(*n.algebra(), *f.target)) fail(Errc::algebra_mismatch, "module is not over the map target");
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < f.source->dim(); ++i)
    action.push_back(n.action_of(f.image_of_basis(i)));
  std::optional<std::vector<Degree>> grading;
  if (n.is_graded() && f.source->is_graded() && f.target->is_graded() &&
      f.source->grading()->signature == f.target->grading()->signature)
    grading = n.grading();
  return Module(f.source, n.dim(), std::move(action), std::move(grading));
}

Module target_as_opposite_module(const AlgebraMap& f) {
  AlgebraPtr aop = std::make_shared<const Algebra>(opposite_algebra(*f.source));
  const Algebra& b = *f.target;
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < aop->dim(); ++i)
    action.push_back(b.left_mul_by(f.image_of_basis(i)));
  std::optional<std::vector<Degree>> grading;
  if (f.source->is_graded() && b.is_graded() &&
      f.source->grading()->signature == b.grading()->signature)
    grading = b.grading()->degrees;
  return Module(aop, b.dim(), std::move(action), std::move(grading));
}

ModuleQuotientResult quotient_by_ideal(const Module& n, const Subspace& k, AlgebraPtr c,
                                       const Matrix& b_lift) {
  const Algebra& b = *n.algebra();
  if (k.ambient_dim() != b.dim()) fail(Errc::dimension_mismatch, "ideal lives in the wrong algebra");
  FieldDescriptor fd = b.field();

  std::vector<Vec> nk;
  for (std::size_t s = 0; s < k.dim(); ++s) {
    Matrix rk = n.action_of(k.basis_vec(s));
    for (std::size_t u = 0; u < n.dim(); ++u) nk.push_back(rk.col(u));
  }
  Subspace nksp = Subspace::from_span(fd, n.dim(), nk);
  QuotientData qd = quotient_space(n.dim(), nksp);
  std::size_t dq = qd.dim();

  std::vector<Matrix> action;
  for (std::size_t s = 0; s < c->dim(); ++s) {
    Matrix rb = n.action_of(b_lift.col(s));
    action.push_back(qd.project * rb * qd.lift);
  }

  std::optional<std::vector<Degree>> grading;
  if (n.is_graded() && c->is_graded()) {
    bool homog = true;
    for (std::size_t s = 0; s < nksp.dim() && homog; ++s)
      homog = is_homogeneous(nksp.basis_vec(s), *n.grading());
    if (homog) {
      std::vector<Degree> deg;
      for (std::size_t t : qd.complement) deg.push_back((*n.grading())[t]);
      grading = std::move(deg);
    }
  }

  ModuleQuotientResult out{Module(c, dq, std::move(action), std::move(grading)), qd.project, std::move(qd)};
  return out;
}

namespace {

// span of v * algebra closure for the given starting vectors
Subspace generated_submodule(const Module& n, const std::vector<Vec>& gens) {
  Subspace cur = Subspace::from_span(n.algebra()->field(), n.dim(), gens);
  for (;;) {
    std::vector<Vec> extra;
    for (std::size_t s = 0; s < cur.dim(); ++s)
      for (std::size_t i = 0; i < n.algebra()->dim(); ++i)
        extra.push_back(n.action(i).apply(cur.basis_vec(s)));
    Subspace next = subspace_sum(cur, Subspace::from_span(n.algebra()->field(), n.dim(), extra));
    if (next == cur) return cur;
    cur = next;
  }
}

}  // namespace

std::vector<Vec> minimal_generators(const Module& n) {
  const Algebra& c = *n.algebra();
  if (!check_local_augmented(c)) fail(Errc::not_certified_local, "algebra is not certified local");
  Subspace rad = augmentation_ideal(c);
  std::vector<Vec> nm;
  for (std::size_t s = 0; s < rad.dim(); ++s) {
    Matrix rm = n.action_of(rad.basis_vec(s));
    for (std::size_t u = 0; u < n.dim(); ++u) nm.push_back(rm.col(u));
  }
  QuotientData qd = quotient_space(n.dim(), Subspace::from_span(c.field(), n.dim(), nm));
  std::vector<Vec> gens;
  for (std::size_t t = 0; t < qd.dim(); ++t) gens.push_back(qd.lift.col(t));
  if (generated_submodule(n, gens).dim() != n.dim())
    fail(Errc::validation_failed, "minimal generator lifts fail to generate");
  return gens;
}

FreenessResult is_free_over_local(const Module& n) {
  const Algebra& c = *n.algebra();
  std::vector<Vec> gens = minimal_generators(n);
  std::size_t r = gens.size();
  FreenessResult out;
  out.min_generators = r;
  if (n.dim() != r * c.dim()) {
    out.free = false;
    return out;
  }

  std::optional<std::vector<Degree>> shifts;
  if (n.is_graded() && c.is_graded()) {
    std::vector<Degree> sh;
    bool ok = true;
    for (const Vec& g : gens) {
      std::optional<Degree> d;
      if (!is_homogeneous(g, *n.grading(), &d) || !d) { ok = false; break; }
      sh.push_back(*d);
    }
    if (ok) shifts = std::move(sh);
  }

  Module fr = free_module(n.algebra(), r, shifts ? &*shifts : nullptr);
  Matrix iso(c.field(), n.dim(), r * c.dim());
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t j = 0; j < c.dim(); ++j)
      iso.set_col(s * c.dim() + j, n.action(j).apply(gens[s]));
  if (rank(iso) != n.dim()) {
    out.free = false;  // dimension matched but the canonical map is singular
    return out;
  }
  for (std::size_t i = 0; i < c.dim(); ++i)
    if (iso * fr.action(i) != n.action(i) * iso)
      fail(Errc::validation_failed, "freeness witness is not a module map");
  out.free = true;
  out.witness = FreenessWitness{r, std::move(gens), std::move(iso), std::move(shifts)};
  return out;
}

std::vector<Matrix> hom_space(const Module& m, const Module& n) {
  check_same_algebra(m, n);
  const Algebra& a = *m.algebra();
  FieldDescriptor fd = a.field();
  std::size_t dm = m.dim(), dn = n.dim();
  std::size_t unknowns = dn * dm;  // T[r][c] at r * dm + c
  Matrix sys(fd, a.dim() * unknowns, unknowns);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Matrix& rm = m.action(i);
    const Matrix& rn = n.action(i);
    std::size_t base = i * unknowns;
    // (T rm - rn T)[r][c] = sum_w T[r][w] rm[w][c] - rn[r][w] T[w][c]
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) {
        std::size_t row = base + r * dm + c;
        for (std::size_t w = 0; w < dm; ++w)
          if (!rm.at(w, c).is_zero()) sys.at(row, r * dm + w) += rm.at(w, c);
        for (std::size_t w = 0; w < dn; ++w)
          if (!rn.at(r, w).is_zero()) sys.at(row, w * dm + c) -= rn.at(r, w);
      }
  }
  Subspace sol = kernel(sys);
  std::vector<Matrix> basis;
  for (std::size_t s = 0; s < sol.dim(); ++s) {
    Vec v = sol.basis_vec(s);
    Matrix t(fd, dn, dm);
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) t.at(r, c) = v[r * dm + c];
    basis.push_back(std::move(t));
  }
  return basis;
}

namespace {

enum class SearchStatus { found, none, inconclusive };

struct SpanSearch {
  SearchStatus status;
  std::optional<Matrix> witness;
};

bool pow_fits(std::uint64_t base, std::size_t exp, std::uint64_t cap, std::uint64_t* out) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > cap / base) return false;
    v *= base;
  }
  *out = v;
  return true;
}

// Looks for an element of span{mats} of the stated rank. Exhaustive for small
// prime-power spaces; otherwise seeded trials, plus the full evaluation grid
// over Q (grid size exceeds every minor's per-variable degree, so rank
// deficiency on the whole grid proves there is no such element).
SpanSearch search_span_for_rank(const std::vector<Matrix>& mats, std::size_t target_rank,
                                FieldDescriptor fd, const SearchPolicy& pol) {
  if (mats.empty()) return {SearchStatus::none, std::nullopt};
  std::size_t h = mats.size();

  if (fd.kind == FieldKind::prime) {
    std::uint64_t total;
    if (pow_fits(fd.p, h, pol.exhaustive_cap, &total)) {
      std::vector<std::uint64_t> digits(h, 0);
      Matrix t(fd, mats[0].rows(), mats[0].cols());
      for (std::uint64_t count = 1; count < total; ++count) {
        for (std::size_t j = 0;; ++j) {
          t = t + mats[j];
          if (++digits[j] == fd.p) digits[j] = 0; else break;
        }
        if (rank(t) == target_rank) return {SearchStatus::found, t};
      }
      return {SearchStatus::none, std::nullopt};
    }
    Xorshift64 rng(pol.seed);
    for (std::size_t trial = 0; trial < pol.trials; ++trial) {
      Matrix t(fd, mats[0].rows(), mats[0].cols());
      for (std::size_t j = 0; j < h; ++j) {
        std::uint64_t c = rng.next_below(fd.p);
        if (c) t = t + mats[j].scaled(Scalar(fd, c));
      }
      if (rank(t) == target_rank) return {SearchStatus::found, t};
    }
    return {SearchStatus::inconclusive, std::nullopt};
  }

  // rational field: trials with small integer coefficients first
  Xorshift64 rng(pol.seed);
  for (std::size_t trial = 0; trial < pol.trials; ++trial) {
    Matrix t(fd, mats[0].rows(), mats[0].cols());
    for (std::size_t j = 0; j < h; ++j) {
      long long c = static_cast<long long>(rng.next_below(17)) - 8;
      if (c) t = t + mats[j].scaled(Scalar::from_int(fd, c));
    }
    if (rank(t) == target_rank) return {SearchStatus::found, t};
  }
  // decisive grid: every minor has per-variable degree <= target_rank
  std::uint64_t grid = static_cast<std::uint64_t>(target_rank) + 1;
  std::uint64_t total;
  if (!pow_fits(grid, h, pol.exhaustive_cap, &total))
    return {SearchStatus::inconclusive, std::nullopt};
  std::vector<std::uint64_t> digits(h, 0);
  for (std::uint64_t count = 1; count < total; ++count) {
    for (std::size_t j = 0;; ++j) {
      if (++digits[j] == grid) digits[j] = 0; else break;
    }
    Matrix t(fd, mats[0].rows(), mats[0].cols());
    for (std::size_t j = 0; j < h; ++j)
      if (digits[j]) t = t + mats[j].scaled(Scalar::from_int(fd, static_cast<long long>(digits[j])));
    if (rank(t) == target_rank) return {SearchStatus::found, t};
  }
  return {SearchStatus::none, std::nullopt};
}

// iso-invariant rank profile of powers of each basis action
std::vector<std::size_t> rank_profile(const Module& m) {
  std::vector<std::size_t> prof;
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i) {
    Matrix p = m.action(i);
    for (std::size_t k = 0; k < m.dim(); ++k) {
      prof.push_back(rank(p));
      p = p * m.action(i);
    }
  }
  return prof;
}

}  // namespace

IsoResult is_isomorphic(const Module& m, const Module& n, const SearchPolicy& pol) {
  check_same_algebra(m, n);
  if (m.dim() != n.dim()) return {IsoVerdict::no, std::nullopt};
  if (m.dim() == 0) return {IsoVerdict::yes, Matrix(m.algebra()->field(), 0, 0)};
  if (rank_profile(m) != rank_profile(n)) return {IsoVerdict::no, std::nullopt};
  std::vector<Matrix> homs = hom_space(m, n);
  if (homs.empty()) return {IsoVerdict::no, std::nullopt};
  SpanSearch s = search_span_for_rank(homs, m.dim(), m.algebra()->field(), pol);
  switch (s.status) {
    case SearchStatus::found: return {IsoVerdict::yes, std::move(s.witness)};
    case SearchStatus::none: return {IsoVerdict::no, std::nullopt};
    default: return {IsoVerdict::inconclusive, std::nullopt};
  }
}

Module direct_sum(const Module& a, const Module& b) {
  check_same_algebra(a, b);
  FieldDescriptor fd = a.algebra()->field();
  std::size_t da = a.dim(), db = b.dim();
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < a.algebra()->dim(); ++i) {
    Matrix m(fd, da + db, da + db);
    for (std::size_t r = 0; r < da; ++r)
      for (std::size_t c = 0; c < da; ++c) m.at(r, c) = a.action(i).at(r, c);
    for (std::size_t r = 0; r < db; ++r)
      for (std::size_t c = 0; c < db; ++c) m.at(da + r, da + c) = b.action(i).at(r, c);
    action.push_back(std::move(m));
  }
  std::optional<std::vector<Degree>> grading;
  if (a.is_graded() && b.is_graded()) {
    std::vector<Degree> deg = *a.grading();
    deg.insert(deg.end(), b.grading()->begin(), b.grading()->end());
    grading = std::move(deg);
  }
  return Module(a.algebra(), da + db, std::move(action), std::move(grading));
}

StripResult strip_free_summands(const Module& n, const SearchPolicy& pol) {
  const Algebra& b = *n.algebra();
  if (!check_local_augmented(b)) fail(Errc::not_certified_local, "algebra is not certified local");
  Module regular = free_module(n.algebra(), 1);
  Module cur = n;
  StripResult out{cur, 0, true};
  for (;;) {
    if (cur.dim() < b.dim()) break;
    std::vector<Matrix> homs = hom_space(cur, regular);
    SpanSearch s = search_span_for_rank(homs, b.dim(), b.field(), pol);
    if (s.status != SearchStatus::found) {
      if (s.status == SearchStatus::inconclusive) out.exhaustive = false;
      break;
    }
    const Matrix& t = *s.witness;  // surjection cur -> regular, so it splits
    Subspace ker = kernel(t);
    std::vector<Matrix> action;
    for (std::size_t i = 0; i < b.dim(); ++i) {
      Matrix act(b.field(), ker.dim(), ker.dim());
      for (std::size_t c = 0; c < ker.dim(); ++c) {
        auto coords = ker.coordinates(cur.action(i).apply(ker.basis_vec(c)));
        if (!coords) fail(Errc::validation_failed, "kernel of a module map is not stable");
        act.set_col(c, *coords);
      }
      action.push_back(std::move(act));
    }
    std::optional<std::vector<Degree>> grading;
    if (cur.is_graded()) {
      std::vector<Degree> deg;
      bool ok = true;
      for (std::size_t c = 0; c < ker.dim() && ok; ++c) {
        std::optional<Degree> d;
        ok = is_homogeneous(ker.basis_vec(c), *cur.grading(), &d) && d.has_value();
        if (ok) deg.push_back(*d);
      }
      if (ok) grading = std::move(deg);
    }
    cur = Module(n.algebra(), ker.dim(), std::move(action), std::move(grading));
    ++out.stripped;
  }
  out.residual = cur;
  return out;
}

}  // namespace descentkit
