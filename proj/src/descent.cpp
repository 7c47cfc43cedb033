#include "descentkit/descent.hpp"

#include <utility>

namespace descentkit {

namespace {

void require_over(const Module& n, const AlgebraPtr& b, const char* what) {
  if (n.algebra().get() == b.get()) return;
  if (!algebra_equal(*n.algebra(), *b)) fail(Errc::algebra_mismatch, std::string(what) + ": module lives over a different algebra");
}

// ambient index of n_u (x) b_j
std::size_t amb(std::size_t u, std::size_t j, std::size_t dim_b) { return u * dim_b + j; }

Vec tensor_vec(FieldDescriptor f, std::size_t ambient, const Vec& nv, std::size_t j, std::size_t dim_b) {
  Vec w = zero_vec(f, ambient);
  for (std::size_t u = 0; u < nv.size(); ++u)
    if (!nv[u].is_zero()) w[amb(u, j, dim_b)] = nv[u];
  return w;
}

std::optional<std::size_t> first_bad_column(const Matrix& a, const Matrix& b) {
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (a.at(r, c) != b.at(r, c)) return c;
  return std::nullopt;
}

}  // namespace

const char* step_name(Step s) {
  switch (s) {
    case Step::S1: return "S1";
    case Step::S2: return "S2";
    case Step::S3: return "S3";
    case Step::S4: return "S4";
    case Step::S5: return "S5";
    case Step::S6: return "S6";
    case Step::S7: return "S7";
  }
  return "?";
}

ExtensionContext build_context(AlgebraPtr a, AlgebraPtr b, AlgebraMap f) {
  Report ra = validate_algebra(*a);
  if (!ra.ok()) fail(Errc::validation_failed, "source algebra: " + ra.summary());
  Report rb = validate_algebra(*b);
  if (!rb.ok()) fail(Errc::validation_failed, "target algebra: " + rb.summary());
  if (f.source.get() != a.get() && !algebra_equal(*f.source, *a))
    fail(Errc::algebra_mismatch, "map source differs from the given base algebra");
  if (f.target.get() != b.get() && !algebra_equal(*f.target, *b))
    fail(Errc::algebra_mismatch, "map target differs from the given total algebra");
  Report rf = validate_algebra_map(f);
  if (!rf.ok()) fail(Errc::validation_failed, "structure map: " + rf.summary());

  if (!a->augmentation()) fail(Errc::not_augmented, "base algebra carries no augmentation");
  if (!b->augmentation()) fail(Errc::not_augmented, "total algebra carries no augmentation");
  // the map must intertwine the augmentations, else the kernel ideal would
  // not sit inside the augmentation ideal of the target
  for (std::size_t i = 0; i < a->dim(); ++i)
    if (b->eps(f.image_of_basis(i)) != a->eps(unit_vec(a->field(), a->dim(), i)))
      fail(Errc::not_augmented, "structure map does not respect the augmentations");

  ExtensionContext ctx;
  ctx.A = a;
  ctx.B = b;
  ctx.f = f;

  Subspace ia = augmentation_ideal(*a);
  auto ia_nil = is_nilpotent_ideal(*a, ia);
  ctx.I_A = IdealData{a, ia, IdealSide::two_sided, ia_nil};

  std::vector<Vec> gens;
  for (std::size_t s = 0; s < ia.dim(); ++s) gens.push_back(f.apply(ia.basis_vec(s)));
  IdealData k = ideal_generated(b, gens, IdealSide::left);
  if (!ideal_closed(*b, k.space, IdealSide::two_sided))
    fail(Errc::not_two_sided, "the ideal generated by the image of the augmentation ideal is not two-sided");
  k.side = IdealSide::two_sided;
  k.nilpotency = is_nilpotent_ideal(*b, k.space);
  ctx.K = k;
  ctx.checks.k_two_sided = true;

  if (!ctx.K.nilpotency->first)
    fail(Errc::kernel_not_nilpotent, "the kernel ideal is not nilpotent");
  ctx.checks.k_nilpotent = true;

  if (!ia_nil.first) fail(Errc::base_not_local, "the base augmentation ideal is not nilpotent");
  ctx.checks.a_local = true;

  Module b_over_a = target_as_opposite_module(f);
  FreenessResult fr = is_free_over_local(b_over_a);
  if (!fr.free || fr.min_generators == 0)
    fail(Errc::not_free_over_base, "the total algebra is not free and nonzero over the base");
  ctx.rho = fr.min_generators;
  ctx.checks.b_free_over_a = true;

  QuotientAlgebraResult qa = quotient_algebra(b, ctx.K.space);
  ctx.C = qa.quotient;
  ctx.g = qa.projection;
  ctx.bq = qa.qd;
  if (!ctx.C->augmentation()) fail(Errc::quotient_not_local, "the fiber algebra carries no augmentation");
  if (!check_local_augmented(*ctx.C)) fail(Errc::quotient_not_local, "the fiber algebra is not local");
  ctx.checks.c_local = true;

  ctx.graded = a->is_graded() && b->is_graded() && ctx.C->is_graded() &&
               a->grading()->signature == b->grading()->signature;
  return ctx;
}

TensorPresentation compute_fgn(const ExtensionContext& ctx, const Module& n) {
  require_over(n, ctx.B, "presentation");
  const FieldDescriptor fd = ctx.B->field();
  const std::size_t nd = n.dim(), db = ctx.B->dim();
  const std::size_t ambient = nd * db;

  std::vector<Vec> rels;
  for (std::size_t s = 0; s < ctx.I_A.space.dim(); ++s) {
    Vec fa = ctx.f.apply(ctx.I_A.space.basis_vec(s));
    Matrix rfa = n.action_of(fa);           // col u = n_u * f(a)
    Matrix lfa = ctx.B->left_mul_by(fa);    // col j = f(a) * b_j
    for (std::size_t u = 0; u < nd; ++u)
      for (std::size_t j = 0; j < db; ++j) {
        Vec rel = zero_vec(fd, ambient);
        for (std::size_t w = 0; w < nd; ++w)
          if (!rfa.at(w, u).is_zero()) rel[amb(w, j, db)] += rfa.at(w, u);
        for (std::size_t x = 0; x < db; ++x)
          if (!lfa.at(x, j).is_zero()) rel[amb(u, x, db)] -= lfa.at(x, j);
        if (!vec_is_zero(rel)) rels.push_back(std::move(rel));
      }
  }

  TensorPresentation out;
  out.n_dim = nd;
  out.ambient = ambient;
  out.qd = quotient_space(ambient, Subspace::from_span(fd, ambient, rels));
  out.relations = out.qd.sub;
  const std::size_t q = out.qd.dim();
  if (q != nd * ctx.rho)
    fail(Errc::validation_failed, "tensor presentation has unexpected dimension");

  std::vector<Matrix> acts;
  acts.reserve(db);
  for (std::size_t i = 0; i < db; ++i) {
    Matrix act(fd, q, q);
    const Matrix& rm = ctx.B->right_mul(i);  // col j = b_j * e_i
    for (std::size_t t = 0; t < q; ++t) {
      std::size_t u = out.qd.complement[t] / db, j = out.qd.complement[t] % db;
      Vec av = zero_vec(fd, ambient);
      for (std::size_t x = 0; x < db; ++x)
        if (!rm.at(x, j).is_zero()) av[amb(u, x, db)] = rm.at(x, j);
      act.set_col(t, out.qd.project.apply(av));
    }
    acts.push_back(std::move(act));
  }

  std::optional<std::vector<Degree>> grading;
  if (ctx.graded && n.is_graded()) {
    std::vector<Degree> ambient_deg(ambient);
    for (std::size_t u = 0; u < nd; ++u)
      for (std::size_t j = 0; j < db; ++j)
        ambient_deg[amb(u, j, db)] = degree_add((*n.grading())[u], ctx.B->grading()->degrees[j]);
    bool ok = true;
    for (std::size_t s = 0; s < out.relations.dim() && ok; ++s)
      ok = is_homogeneous(out.relations.basis_vec(s), ambient_deg);
    if (ok) {
      std::vector<Degree> qdeg(q);
      for (std::size_t t = 0; t < q; ++t) qdeg[t] = ambient_deg[out.qd.complement[t]];
      grading = std::move(qdeg);
    }
  }
  out.quotient = Module(ctx.B, q, std::move(acts), std::move(grading));

  Matrix counit(fd, nd, q);
  for (std::size_t t = 0; t < q; ++t) {
    std::size_t u = out.qd.complement[t] / db, j = out.qd.complement[t] % db;
    counit.set_col(t, n.action(j).col(u));
  }
  out.counit = std::move(counit);

  Matrix iota(fd, q, nd);
  const Vec& ub = ctx.B->unit();
  for (std::size_t u = 0; u < nd; ++u) {
    Vec av = zero_vec(fd, ambient);
    for (std::size_t j = 0; j < db; ++j)
      if (!ub[j].is_zero()) av[amb(u, j, db)] = ub[j];
    iota.set_col(u, out.qd.project.apply(av));
  }
  out.iota = std::move(iota);
  return out;
}

CriterionVerdict descent_criterion(const ExtensionContext& ctx, const Module& n) {
  require_over(n, ctx.B, "criterion");
  ModuleQuotientResult q = quotient_by_ideal(n, ctx.K.space, ctx.C, ctx.bq.lift);
  CriterionVerdict v{false, is_free_over_local(q.module), std::move(q.module), std::move(q.projection),
                     std::move(q.qd)};
  v.free = v.freeness.free;
  return v;
}

std::variant<SigmaData, StepFailure> construct_sigma(const ExtensionContext& ctx, const Module& n,
                                                     const CriterionVerdict& verdict,
                                                     std::size_t variant) {
  const FieldDescriptor fd = ctx.B->field();
  const std::size_t nd = n.dim(), db = ctx.B->dim(), dc = ctx.C->dim();
  const FreenessWitness& w = *verdict.freeness.witness;
  const std::size_t r = w.rank;

  std::vector<Vec> lifts;
  lifts.reserve(r);
  for (std::size_t s = 0; s < r; ++s) lifts.push_back(verdict.nbar_qd.lift.apply(w.generators[s]));

  if (variant > 0) {
    const Subspace& nk = verdict.nbar_qd.sub;
    std::vector<Scalar> lams;
    if (fd.kind == FieldKind::prime) {
      std::uint64_t top = fd.p - 1 < 4 ? fd.p - 1 : 4;
      for (std::uint64_t c = 1; c <= top; ++c) lams.push_back(Scalar(fd, c));
    } else {
      for (long long c : {1ll, -1ll, 2ll, -2ll}) lams.push_back(Scalar::from_int(fd, c));
    }
    std::size_t ns = lams.size(), nb = nk.dim();
    std::size_t idx = variant - 1;
    if (nb == 0 || idx >= r * nb * ns)
      return StepFailure{Step::S1, {}, "lift variants exhausted"};
    std::size_t s = idx / (nb * ns), rem = idx % (nb * ns);
    std::size_t t = rem / ns, c = rem % ns;
    lifts[s] = vec_add(lifts[s], vec_scale(lams[c], nk.basis_vec(t)));
  }

  Matrix sigma(fd, nd, r * db);
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t j = 0; j < db; ++j) sigma.set_col(s * db + j, n.action(j).apply(lifts[s]));

  // reduction check: the projected map must match the freeness witness
  Matrix block(fd, r * dc, r * db);
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < dc; ++t)
      for (std::size_t j = 0; j < db; ++j) block.at(s * dc + t, s * db + j) = ctx.g.matrix.at(t, j);
  Matrix lhs = verdict.projection * sigma;
  Matrix rhs = w.iso * block;
  if (auto bad = first_bad_column(lhs, rhs)) {
    Vec diff = vec_sub(lhs.col(*bad), rhs.col(*bad));
    return StepFailure{Step::S2, diff, "reduction of the lifted map disagrees with the freeness witness"};
  }

  if (rank(sigma) != nd) {
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < sigma.cols(); ++c) cols.push_back(sigma.col(c));
    Subspace image = Subspace::from_span(fd, nd, cols);
    Vec witness = zero_vec(fd, nd);
    for (std::size_t i = 0; i < nd; ++i) {
      Vec e = unit_vec(fd, nd, i);
      if (!image.contains(e)) {
        witness = e;
        break;
      }
    }
    return StepFailure{Step::S3, witness, "the lifted generators do not span the module"};
  }

  SigmaData out;
  out.lifts = std::move(lifts);
  if (ctx.graded && n.is_graded()) {
    std::vector<Degree> shifts;
    bool ok = true;
    for (const Vec& l : out.lifts) {
      std::optional<Degree> d;
      if (!is_homogeneous(l, *n.grading(), &d) || !d) {
        ok = false;
        break;
      }
      shifts.push_back(*d);
    }
    if (ok) out.shifts = std::move(shifts);
  }
  out.free_source = free_module(ctx.B, r, out.shifts ? &*out.shifts : nullptr);
  out.sigma = std::move(sigma);
  out.sigma_kernel = kernel(out.sigma);
  return out;
}

std::variant<PsiData, StepFailure> construct_psi(const ExtensionContext& ctx, const Module& n,
                                                 const SigmaData& sig) {
  const FieldDescriptor fd = ctx.B->field();
  const std::size_t nd = n.dim(), db = ctx.B->dim();
  TensorPresentation fgn = compute_fgn(ctx, n);
  const std::size_t q = fgn.qd.dim();
  const std::size_t r = sig.lifts.size();

  Matrix lambda(fd, q, r * db);
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t j = 0; j < db; ++j)
      lambda.set_col(s * db + j, fgn.qd.project.apply(tensor_vec(fd, fgn.ambient, sig.lifts[s], j, db)));

  for (std::size_t t = 0; t < sig.sigma_kernel.dim(); ++t) {
    Vec w = lambda.apply(sig.sigma_kernel.basis_vec(t));
    if (!vec_is_zero(w))
      return StepFailure{Step::S4, w, "coaction fails to factor through the lifted presentation"};
  }

  SolveResult sec = solve(sig.sigma, Matrix::identity(fd, nd));
  if (!sec.particular)
    return StepFailure{Step::S3, {}, "no section: the lifted generators do not span the module"};
  Matrix psi = lambda * *sec.particular;

  for (std::size_t i = 0; i < db; ++i) {
    Matrix lhs = psi * n.action(i);
    Matrix rhs = fgn.quotient.action(i) * psi;
    if (auto bad = first_bad_column(lhs, rhs))
      return StepFailure{Step::S4, vec_sub(lhs.col(*bad), rhs.col(*bad)),
                         "coaction is not module-linear"};
  }

  Matrix counit_comp = fgn.counit * psi;
  Matrix id = Matrix::identity(fd, nd);
  if (auto bad = first_bad_column(counit_comp, id))
    return StepFailure{Step::S5, vec_sub(counit_comp.col(*bad), id.col(*bad)),
                       "coaction is not counital"};

  TensorPresentation fgq = compute_fgn(ctx, fgn.quotient);
  auto push = [&](const Matrix& h) {  // h : n -> fgn.quotient, A-linear; result on classes
    Matrix out(fd, fgq.qd.dim(), q);
    for (std::size_t t = 0; t < q; ++t) {
      std::size_t u = fgn.qd.complement[t] / db, j = fgn.qd.complement[t] % db;
      out.set_col(t, fgq.qd.project.apply(tensor_vec(fd, fgq.ambient, h.col(u), j, db)));
    }
    return out;
  };
  Matrix side1 = push(psi) * psi;
  Matrix side2 = push(fgn.iota) * psi;
  if (auto bad = first_bad_column(side1, side2))
    return StepFailure{Step::S6, vec_sub(side1.col(*bad), side2.col(*bad)),
                       "coaction is not coassociative"};

  return PsiData{std::move(fgn), std::move(psi)};
}

namespace {

std::variant<Certificate, StepFailure> finish_certificate(const ExtensionContext& ctx, const Module& n,
                                                          const SigmaData& sig, const PsiData& pd) {
  const FieldDescriptor fd = ctx.B->field();
  const std::size_t nd = n.dim(), db = ctx.B->dim(), da = ctx.A->dim();

  Matrix diff = pd.psi - pd.fgn.iota;
  Subspace mb = kernel(diff);

  std::vector<Matrix> rfs;
  rfs.reserve(da);
  for (std::size_t i = 0; i < da; ++i) rfs.push_back(n.action_of(ctx.f.image_of_basis(i)));

  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t c = 0; c < mb.dim(); ++c) {
      Vec w = rfs[i].apply(mb.basis_vec(c));
      if (!mb.contains(w))
        return StepFailure{Step::S7, w, "equalizer is not stable under the base action"};
    }

  const std::size_t md = mb.dim();
  std::vector<Matrix> acts;
  acts.reserve(da);
  for (std::size_t i = 0; i < da; ++i) {
    Matrix act(fd, md, md);
    for (std::size_t c = 0; c < md; ++c) {
      auto coords = mb.coordinates(rfs[i].apply(mb.basis_vec(c)));
      act.set_col(c, *coords);
    }
    acts.push_back(std::move(act));
  }

  std::optional<std::vector<Degree>> mg;
  if (ctx.graded && n.is_graded()) {
    std::vector<Degree> degs;
    bool ok = true;
    for (std::size_t c = 0; c < md && ok; ++c) {
      std::optional<Degree> d;
      ok = is_homogeneous(mb.basis_vec(c), *n.grading(), &d) && d.has_value();
      if (ok) degs.push_back(*d);
    }
    if (ok) mg = std::move(degs);
  }
  Module m(ctx.A, md, std::move(acts), std::move(mg));

  BaseChangeResult bc = base_change(ctx.f, m);
  Matrix mu_amb(fd, nd, md * db);
  for (std::size_t c = 0; c < md; ++c)
    for (std::size_t j = 0; j < db; ++j) mu_amb.set_col(c * db + j, n.action(j).apply(mb.basis_vec(c)));
  for (std::size_t t = 0; t < bc.qd.sub.dim(); ++t) {
    Vec w = mu_amb.apply(bc.qd.sub.basis_vec(t));
    if (!vec_is_zero(w))
      return StepFailure{Step::S7, w, "comparison map does not factor through the base change"};
  }
  Matrix mu = mu_amb * bc.qd.lift;

  for (std::size_t i = 0; i < db; ++i) {
    Matrix lhs = mu * bc.module.action(i);
    Matrix rhs = n.action(i) * mu;
    if (auto bad = first_bad_column(lhs, rhs))
      return StepFailure{Step::S7, vec_sub(lhs.col(*bad), rhs.col(*bad)),
                         "comparison map is not module-linear"};
  }

  if (bc.module.dim() != nd || rank(mu) != nd) {
    Subspace ker = kernel(mu);
    Vec w = ker.dim() > 0 ? ker.basis_vec(0) : zero_vec(fd, mu.cols());
    return StepFailure{Step::S7, w, "comparison map is not bijective"};
  }

  Certificate cert;
  cert.y_rank = sig.lifts.size();
  cert.shifts = sig.shifts;
  cert.lifts = sig.lifts;
  cert.sigma = sig.sigma;
  cert.psi = pd.psi;
  cert.m_basis = std::move(mb);
  cert.m = std::move(m);
  cert.mu = std::move(mu);
  return cert;
}

}  // namespace

DescentOutcome descend(const ExtensionContext& ctx, const Module& n, std::size_t retry_bound) {
  DescentOutcome out;
  CriterionVerdict verdict = descent_criterion(ctx, n);
  out.criterion_free = verdict.free;
  out.criterion_rank = verdict.freeness.min_generators;
  if (!verdict.free) return out;  // not extended: no construction attempted

  std::optional<StepFailure> first;
  StepChecks first_checks;
  std::size_t built = 0;

  for (std::size_t variant = 0; variant <= retry_bound; ++variant) {
    auto sres = construct_sigma(ctx, n, verdict, variant);
    if (auto* sf = std::get_if<StepFailure>(&sres)) {
      if (sf->step == Step::S1) break;  // no further lift variants
      if (!first) {
        first = *sf;
        first_checks.s2 = sf->step == Step::S3;
      }
      break;  // reduction or spanning failures are not lift-dependent
    }
    SigmaData sig = std::get<SigmaData>(std::move(sres));
    ++built;
    StepChecks cur;
    cur.s2 = cur.s3 = true;

    auto pres = construct_psi(ctx, n, sig);
    if (auto* pf = std::get_if<StepFailure>(&pres)) {
      cur.s4 = pf->step == Step::S5 || pf->step == Step::S6;
      cur.s5 = pf->step == Step::S6;
      if (!first) {
        first = *pf;
        first_checks = cur;
      }
      continue;  // retry with the next lift variant
    }
    PsiData pd = std::get<PsiData>(std::move(pres));
    cur.s4 = cur.s5 = cur.s6 = true;

    auto cres = finish_certificate(ctx, n, sig, pd);
    if (auto* cf = std::get_if<StepFailure>(&cres)) {
      if (!first) {
        first = *cf;
        first_checks = cur;
      }
      continue;
    }
    cur.s7 = true;
    out.certificate = std::get<Certificate>(std::move(cres));
    out.certificate->retries_used = built - 1;
    out.success = true;
    out.checks = cur;
    out.retries_used = built - 1;
    return out;
  }

  out.failure = first;
  out.checks = first_checks;
  out.retries_used = built > 0 ? built - 1 : 0;
  return out;
}

Report verify_certificate(const ExtensionContext& ctx, const Module& n, const Certificate& cert) {
  Report rep;
  const FieldDescriptor fd = ctx.B->field();
  const std::size_t nd = n.dim(), db = ctx.B->dim(), dc = ctx.C->dim();
  const std::size_t r = cert.y_rank;

  if (cert.lifts.size() != r) {
    rep.add("S2", {}, "lift count differs from the stated rank");
    return rep;
  }
  for (const Vec& l : cert.lifts)
    if (l.size() != nd) {
      rep.add("S2", {}, "lift has the wrong dimension");
      return rep;
    }
  if (cert.sigma.rows() != nd || cert.sigma.cols() != r * db) {
    rep.add("S2", {}, "presentation matrix has the wrong shape");
    return rep;
  }
  Matrix sigma2(fd, nd, r * db);
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t j = 0; j < db; ++j) sigma2.set_col(s * db + j, n.action(j).apply(cert.lifts[s]));
  if (sigma2 != cert.sigma) {
    rep.add("S2", {}, "presentation matrix disagrees with its lifts");
    return rep;
  }
  ModuleQuotientResult q = quotient_by_ideal(n, ctx.K.space, ctx.C, ctx.bq.lift);
  Matrix red(fd, q.module.dim(), r * dc);
  for (std::size_t s = 0; s < r; ++s) {
    Vec pl = q.projection.apply(cert.lifts[s]);
    for (std::size_t t = 0; t < dc; ++t) red.set_col(s * dc + t, q.module.action(t).apply(pl));
  }
  if (q.module.dim() != r * dc || rank(red) != r * dc) {
    rep.add("S2", {}, "reduced lifts are not a basis of the fiber");
    return rep;
  }

  if (rank(cert.sigma) != nd) {
    rep.add("S3", {}, "lifted generators do not span the module");
    return rep;
  }

  TensorPresentation fgn = compute_fgn(ctx, n);
  const std::size_t qdim = fgn.qd.dim();
  Matrix lambda(fd, qdim, r * db);
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t j = 0; j < db; ++j)
      lambda.set_col(s * db + j, fgn.qd.project.apply(tensor_vec(fd, fgn.ambient, cert.lifts[s], j, db)));
  Subspace sker = kernel(cert.sigma);
  for (std::size_t t = 0; t < sker.dim(); ++t)
    if (!vec_is_zero(lambda.apply(sker.basis_vec(t)))) {
      rep.add("S4", {t}, "coaction fails to factor through the lifted presentation");
      return rep;
    }
  if (cert.psi.rows() != qdim || cert.psi.cols() != nd) {
    rep.add("S4", {}, "coaction matrix has the wrong shape");
    return rep;
  }
  for (std::size_t i = 0; i < db; ++i)
    if (cert.psi * n.action(i) != fgn.quotient.action(i) * cert.psi) {
      rep.add("S4", {i}, "coaction is not module-linear");
      return rep;
    }

  if (fgn.counit * cert.psi != Matrix::identity(fd, nd)) {
    rep.add("S5", {}, "coaction is not counital");
    return rep;
  }

  TensorPresentation fgq = compute_fgn(ctx, fgn.quotient);
  auto push = [&](const Matrix& h) {
    Matrix out(fd, fgq.qd.dim(), qdim);
    for (std::size_t t = 0; t < qdim; ++t) {
      std::size_t u = fgn.qd.complement[t] / db, j = fgn.qd.complement[t] % db;
      out.set_col(t, fgq.qd.project.apply(tensor_vec(fd, fgq.ambient, h.col(u), j, db)));
    }
    return out;
  };
  if (push(cert.psi) * cert.psi != push(fgn.iota) * cert.psi) {
    rep.add("S6", {}, "coaction is not coassociative");
    return rep;
  }

  Subspace mker = kernel(cert.psi - fgn.iota);
  if (cert.m_basis != mker) {
    rep.add("S7", {}, "stated equalizer differs from the kernel of the coaction comparison");
    return rep;
  }
  const std::size_t da = ctx.A->dim();
  std::vector<Matrix> rfs;
  for (std::size_t i = 0; i < da; ++i) rfs.push_back(n.action_of(ctx.f.image_of_basis(i)));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t c = 0; c < mker.dim(); ++c)
      if (!mker.contains(rfs[i].apply(mker.basis_vec(c)))) {
        rep.add("S7", {i, c}, "equalizer is not stable under the base action");
        return rep;
      }
  if (cert.m.dim() != mker.dim() || !algebra_equal(*cert.m.algebra(), *ctx.A)) {
    rep.add("S7", {}, "descended module has the wrong shape");
    return rep;
  }
  for (std::size_t i = 0; i < da; ++i) {
    Matrix act(fd, mker.dim(), mker.dim());
    for (std::size_t c = 0; c < mker.dim(); ++c) {
      auto coords = mker.coordinates(rfs[i].apply(mker.basis_vec(c)));
      if (!coords) {
        rep.add("S7", {i, c}, "equalizer coordinates failed");
        return rep;
      }
      act.set_col(c, *coords);
    }
    if (act != cert.m.action(i)) {
      rep.add("S7", {i}, "descended action differs from the equalizer action");
      return rep;
    }
  }
  BaseChangeResult bc = base_change(ctx.f, cert.m);
  Matrix mu_amb(fd, nd, mker.dim() * db);
  for (std::size_t c = 0; c < mker.dim(); ++c)
    for (std::size_t j = 0; j < db; ++j)
      mu_amb.set_col(c * db + j, n.action(j).apply(mker.basis_vec(c)));
  if (cert.mu.rows() != nd || cert.mu.cols() != bc.module.dim() || cert.mu != mu_amb * bc.qd.lift) {
    rep.add("S7", {}, "comparison map disagrees with the equalizer inclusion");
    return rep;
  }
  for (std::size_t i = 0; i < db; ++i)
    if (cert.mu * bc.module.action(i) != n.action(i) * cert.mu) {
      rep.add("S7", {i}, "comparison map is not module-linear");
      return rep;
    }
  if (bc.module.dim() != nd || rank(cert.mu) != nd) {
    rep.add("S7", {}, "comparison map is not bijective");
    return rep;
  }
  return rep;
}

}  // namespace descentkit
