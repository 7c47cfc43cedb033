#include "descentkit/gallery.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <utility>

namespace descentkit {

namespace {

std::string power_label(const std::string& var, std::size_t i) {
  if (i == 0) return "1";
  if (i == 1) return var;
  return var + "^" + std::to_string(i);
}

Subspace submodule_closure(const Module& m, const std::vector<Vec>& seeds) {
  FieldDescriptor fd = m.algebra()->field();
  Subspace s = Subspace::from_span(fd, m.dim(), seeds);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Vec> fresh;
    for (std::size_t t = 0; t < s.dim(); ++t)
      for (std::size_t i = 0; i < m.algebra()->dim(); ++i) {
        Vec v = m.action(i).apply(s.basis_vec(t));
        if (!s.contains(v)) fresh.push_back(std::move(v));
      }
    if (!fresh.empty()) {
      std::vector<Vec> all;
      for (std::size_t t = 0; t < s.dim(); ++t) all.push_back(s.basis_vec(t));
      for (Vec& v : fresh) all.push_back(std::move(v));
      s = Subspace::from_span(fd, m.dim(), all);
      grew = true;
    }
  }
  return s;
}

Module quotient_module_by(const Module& m, const Subspace& s) {
  QuotientData qd = quotient_space(m.dim(), s);
  std::vector<Matrix> acts;
  acts.reserve(m.algebra()->dim());
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i)
    acts.push_back(qd.project * m.action(i) * qd.lift);
  std::optional<std::vector<Degree>> grading;
  if (m.is_graded()) {
    bool homog = true;
    for (std::size_t t = 0; t < s.dim() && homog; ++t)
      homog = is_homogeneous(s.basis_vec(t), *m.grading());
    if (homog) {
      std::vector<Degree> degs;
      for (std::size_t t : qd.complement) degs.push_back((*m.grading())[t]);
      grading = std::move(degs);
    }
  }
  return Module(m.algebra(), qd.dim(), std::move(acts), std::move(grading));
}

// Detects algebras of the form k[w]/(w^dim) with w = z - eps(z) for a basis
// element z whose powers span. Such algebras have partition-type module
// theory.
struct NilGenerator {
  std::size_t index = 0;
  Vec w;
  std::size_t order = 0;
  std::vector<Vec> powers;  // w^0 .. w^{order-1}
  std::optional<Degree> degree;
};

std::optional<NilGenerator> find_nil_generator(const Algebra& a) {
  if (!a.augmentation()) return std::nullopt;
  FieldDescriptor fd = a.field();
  std::size_t d = a.dim();
  for (std::size_t z = 0; z < d; ++z) {
    Vec ez = unit_vec(fd, d, z);
    std::vector<Vec> pows{a.unit()};
    for (std::size_t k = 1; k < d; ++k) pows.push_back(a.multiply(pows.back(), ez));
    if (Subspace::from_span(fd, d, pows).dim() != d) continue;
    Scalar c = a.eps(ez);
    Vec w = vec_sub(ez, vec_scale(c, a.unit()));
    std::vector<Vec> wpows{a.unit()};
    std::size_t order = 0;
    for (std::size_t k = 1; k <= d; ++k) {
      Vec nxt = a.multiply(wpows.back(), w);
      if (vec_is_zero(nxt)) {
        order = k;
        break;
      }
      wpows.push_back(std::move(nxt));
    }
    if (order == 0) continue;  // not nilpotent; no basis generator will fix this
    NilGenerator out;
    out.index = z;
    out.w = w;
    out.order = order;
    out.powers = std::move(wpows);
    if (a.is_graded()) {
      std::optional<Degree> deg;
      if (is_homogeneous(w, a.grading()->degrees, &deg) && deg) out.degree = *deg;
    }
    return out;
  }
  return std::nullopt;
}

void partitions_into(std::size_t total, std::size_t max_part,
                     std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t first = std::min(total, max_part); first >= 1; --first) {
    cur.push_back(first);
    partitions_into(total - first, first, cur, out);
    cur.pop_back();
    if (first == 1) break;
  }
}

// Modules over k[w]/(w^t): one class per partition of the dimension with
// parts at most t; w acts as the block shift of the partition.
Module partition_module(const AlgebraPtr& a, const NilGenerator& ng,
                        const std::vector<std::size_t>& parts) {
  FieldDescriptor fd = a->field();
  std::size_t d = a->dim(), dd = 0;
  for (std::size_t p : parts) dd += p;
  Matrix x(fd, dd, dd);
  std::size_t off = 0;
  for (std::size_t p : parts) {
    for (std::size_t i = 0; i + 1 < p; ++i) x.at(off + i + 1, off + i) = Scalar::one(fd);
    off += p;
  }
  // express each algebra basis element in the w-power basis
  Matrix pw = Matrix::from_cols(fd, d, ng.powers);
  SolveResult sol = solve(pw, Matrix::identity(fd, d));
  Matrix coeff = *sol.particular;  // col i = w-power coefficients of e_i
  std::vector<Matrix> xpow{Matrix::identity(fd, dd)};
  for (std::size_t k = 1; k < ng.order; ++k) xpow.push_back(xpow.back() * x);
  std::vector<Matrix> acts;
  for (std::size_t i = 0; i < d; ++i) {
    Matrix act(fd, dd, dd);
    for (std::size_t k = 0; k < ng.order; ++k)
      if (!coeff.at(k, i).is_zero()) act = act + xpow[k].scaled(coeff.at(k, i));
    acts.push_back(std::move(act));
  }
  std::optional<std::vector<Degree>> grading;
  if (ng.degree) {
    std::vector<Degree> degs;
    for (std::size_t p : parts)
      for (std::size_t i = 0; i < p; ++i) {
        Degree dg(ng.degree->size(), 0);
        for (std::size_t c = 0; c < dg.size(); ++c)
          dg[c] = (*ng.degree)[c] * static_cast<long long>(i);
        degs.push_back(std::move(dg));
      }
    grading = std::move(degs);
  }
  return Module(a, dd, std::move(acts), std::move(grading));
}

// Generating set of the algebra with a word expression for every basis
// element, used to cut the enumeration space down to generator actions.
struct GeneratingWords {
  std::vector<std::size_t> gens;                   // basis indices
  std::vector<std::vector<std::size_t>> recipes;   // word = unit * e_g1 * e_g2 ...
  Matrix coeff;                                    // col i = word coefficients of e_i
};

GeneratingWords generating_words(const Algebra& a) {
  FieldDescriptor fd = a.field();
  std::size_t d = a.dim();
  std::vector<std::size_t> gens;
  std::vector<Vec> word_vecs;
  std::vector<std::vector<std::size_t>> recipes;

  auto closure = [&]() {
    word_vecs.clear();
    recipes.clear();
    word_vecs.push_back(a.unit());
    recipes.push_back({});
    Subspace span = Subspace::from_span(fd, d, word_vecs);
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      std::size_t t = queue.front();
      queue.pop_front();
      for (std::size_t g : gens) {
        Vec v = a.multiply(word_vecs[t], unit_vec(fd, d, g));
        if (span.contains(v)) continue;
        std::vector<std::size_t> rec = recipes[t];
        rec.push_back(g);
        word_vecs.push_back(v);
        recipes.push_back(std::move(rec));
        std::vector<Vec> all = word_vecs;
        span = Subspace::from_span(fd, d, all);
        queue.push_back(word_vecs.size() - 1);
      }
    }
    return span;
  };

  Subspace span = closure();
  while (span.dim() < d) {
    std::size_t pick = d;
    for (std::size_t i = 0; i < d; ++i)
      if (!span.contains(unit_vec(fd, d, i))) {
        pick = i;
        break;
      }
    gens.push_back(pick);
    span = closure();
  }

  GeneratingWords out;
  out.gens = gens;
  out.recipes = recipes;
  Matrix wm = Matrix::from_cols(fd, d, word_vecs);
  SolveResult sol = solve(wm, Matrix::identity(fd, d));
  out.coeff = *sol.particular;
  return out;
}

std::vector<Module> enumerate_general(const AlgebraPtr& a, std::size_t dd, std::uint64_t budget,
                                      const GeneratingWords& gw) {
  FieldDescriptor fd = a->field();
  if (fd.kind != FieldKind::prime)
    fail(Errc::budget_exceeded, "module enumeration needs a finite field");
  std::size_t d = a->dim(), g = gw.gens.size();
  std::size_t slots = dd * dd * g;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    if (total > budget / fd.p + 1) fail(Errc::budget_exceeded, "module enumeration space too large");
    total *= fd.p;
    if (total > budget) fail(Errc::budget_exceeded, "module enumeration space too large");
  }

  std::vector<Module> found;
  std::vector<std::uint64_t> digits(slots, 0);
  std::vector<Matrix> xs(g, Matrix(fd, dd, dd));
  for (std::uint64_t count = 0; count < total; ++count) {
    // decode digits into generator matrices
    std::uint64_t rem = count;
    for (std::size_t s = 0; s < slots; ++s) {
      digits[s] = rem % fd.p;
      rem /= fd.p;
    }
    for (std::size_t gi = 0; gi < g; ++gi)
      for (std::size_t r = 0; r < dd; ++r)
        for (std::size_t c = 0; c < dd; ++c)
          xs[gi].at(r, c) = Scalar(fd, digits[(gi * dd + r) * dd + c]);

    // word action matrices: right action composes in reverse
    std::vector<Matrix> word_mats;
    word_mats.reserve(gw.recipes.size());
    for (const auto& rec : gw.recipes) {
      Matrix m = Matrix::identity(fd, dd);
      for (std::size_t gi : rec) {
        std::size_t pos = 0;
        while (gw.gens[pos] != gi) ++pos;
        m = xs[pos] * m;
      }
      word_mats.push_back(std::move(m));
    }
    std::vector<Matrix> acts;
    acts.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
      Matrix act(fd, dd, dd);
      for (std::size_t t = 0; t < word_mats.size(); ++t)
        if (!gw.coeff.at(t, i).is_zero()) act = act + word_mats[t].scaled(gw.coeff.at(t, i));
      acts.push_back(std::move(act));
    }
    Module cand(a, dd, std::move(acts));
    if (!validate_module(cand).ok()) continue;
    bool dup = false;
    for (const Module& kept : found)
      if (kept.dim() == dd && is_isomorphic(kept, cand).verdict == IsoVerdict::yes) {
        dup = true;
        break;
      }
    if (!dup) found.push_back(std::move(cand));
  }
  return found;
}

}  // namespace

AlgebraPtr group_algebra(const std::vector<std::vector<std::size_t>>& table, FieldDescriptor f,
                         const std::vector<std::string>* labels) {
  std::size_t m = table.size();
  if (m == 0) fail(Errc::not_a_group, "empty multiplication table");
  for (const auto& row : table) {
    if (row.size() != m) fail(Errc::not_a_group, "multiplication table is not square");
    for (std::size_t v : row)
      if (v >= m) fail(Errc::not_a_group, "multiplication table entry out of range");
  }
  std::size_t id = m;
  for (std::size_t e = 0; e < m && id == m; ++e) {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) ok = table[e][i] == i && table[i][e] == i;
    if (ok) id = e;
  }
  if (id == m) fail(Errc::not_a_group, "no identity element");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          fail(Errc::not_a_group, "multiplication is not associative");
  for (std::size_t i = 0; i < m; ++i) {
    bool has = false;
    for (std::size_t j = 0; j < m && !has; ++j) has = table[i][j] == id && table[j][i] == id;
    if (!has) fail(Errc::not_a_group, "element without inverse");
  }

  std::vector<std::string> labs;
  if (labels) {
    if (labels->size() != m) fail(Errc::not_a_group, "label count differs from the table size");
    labs = *labels;
  } else {
    for (std::size_t i = 0; i < m; ++i) labs.push_back("g" + std::to_string(i));
  }
  std::vector<MulTriple> mul;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) mul.push_back({i, j, table[i][j], Scalar::one(f)});
  Vec unit = unit_vec(f, m, id);
  Vec aug(m, Scalar::one(f));
  return make_algebra(f, m, std::move(labs), std::move(mul), std::move(unit), std::move(aug));
}

AlgebraPtr truncated_polynomial(FieldDescriptor f, std::size_t t, const std::string& var,
                                long long gen_degree) {
  if (t == 0) fail(Errc::bad_family_spec, "truncation order must be positive");
  if (gen_degree < 0) fail(Errc::bad_family_spec, "generator degree must be nonnegative");
  std::vector<std::string> labs;
  std::vector<MulTriple> mul;
  for (std::size_t i = 0; i < t; ++i) {
    labs.push_back(power_label(var, i));
    for (std::size_t j = 0; j < t; ++j)
      if (i + j < t) mul.push_back({i, j, i + j, Scalar::one(f)});
  }
  Vec unit = unit_vec(f, t, 0);
  Vec aug = zero_vec(f, t);
  aug[0] = Scalar::one(f);
  AlgebraGrading grading;
  grading.signature = {0, 1};
  for (std::size_t i = 0; i < t; ++i)
    grading.degrees.push_back({static_cast<long long>(i) * gen_degree});
  return make_algebra(f, t, std::move(labs), std::move(mul), std::move(unit), std::move(aug),
                      std::move(grading));
}

AlgebraPtr exterior_algebra(FieldDescriptor f, std::size_t n) {
  if (n > 10) fail(Errc::bad_family_spec, "exterior algebra too large");
  std::size_t dim = std::size_t(1) << n;
  std::vector<std::string> labs;
  for (std::size_t s = 0; s < dim; ++s) {
    if (s == 0) {
      labs.push_back("1");
      continue;
    }
    std::string l;
    for (std::size_t i = 0; i < n; ++i)
      if (s & (std::size_t(1) << i)) {
        if (!l.empty()) l += "^";
        l += "e" + std::to_string(i + 1);
      }
    labs.push_back(std::move(l));
  }
  std::vector<MulTriple> mul;
  for (std::size_t s = 0; s < dim; ++s)
    for (std::size_t t = 0; t < dim; ++t) {
      if (s & t) continue;
      long long inversions = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (s & (std::size_t(1) << i))
          for (std::size_t j = 0; j < i; ++j)
            if (t & (std::size_t(1) << j)) ++inversions;
      long long sign = inversions % 2 == 0 ? 1 : -1;
      mul.push_back({s, t, s | t, Scalar::from_int(f, sign)});
    }
  Vec unit = unit_vec(f, dim, 0);
  Vec aug = zero_vec(f, dim);
  aug[0] = Scalar::one(f);
  AlgebraGrading grading;
  grading.signature = {0, 1};
  for (std::size_t s = 0; s < dim; ++s)
    grading.degrees.push_back({static_cast<long long>(__builtin_popcountll(s))});
  return make_algebra(f, dim, std::move(labs), std::move(mul), std::move(unit), std::move(aug),
                      std::move(grading));
}

MapFamily frobenius_family(std::uint64_t p, std::size_t a, std::size_t b) {
  if (!is_prime_u64(p)) fail(Errc::bad_family_spec, "characteristic must be prime");
  auto powchk = [&](std::size_t e) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < e; ++i) {
      v *= p;
      if (v > 4096) fail(Errc::bad_family_spec, "family dimensions too large");
    }
    return v;
  };
  std::uint64_t pa = powchk(a), pb = powchk(b), pab = powchk(a + b);
  FieldDescriptor f = make_prime_field(p);
  AlgebraPtr base = truncated_polynomial(f, pa, "y", static_cast<long long>(pb));
  AlgebraPtr total = truncated_polynomial(f, pab, "x", 1);
  Matrix m(f, pab, pa);
  for (std::uint64_t i = 0; i < pa; ++i) m.at(i * pb, i) = Scalar::one(f);
  return {base, total, AlgebraMap{base, total, std::move(m)}};
}

MapFamily cyclic_inclusion(std::size_t m, std::size_t n, FieldDescriptor f) {
  if (m == 0 || n == 0 || n % m != 0)
    fail(Errc::bad_family_spec, "subgroup order must divide the group order");
  auto cyc_table = [](std::size_t k) {
    std::vector<std::vector<std::size_t>> t(k, std::vector<std::size_t>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) t[i][j] = (i + j) % k;
    return t;
  };
  auto cyc_labels = [](std::size_t k, const std::string& var) {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < k; ++i) l.push_back(power_label(var, i));
    return l;
  };
  std::vector<std::string> la = cyc_labels(m, "h"), lb = cyc_labels(n, "g");
  AlgebraPtr base = group_algebra(cyc_table(m), f, &la);
  AlgebraPtr total = group_algebra(cyc_table(n), f, &lb);
  Matrix mm(f, n, m);
  std::size_t step = n / m;
  for (std::size_t i = 0; i < m; ++i) mm.at(i * step, i) = Scalar::one(f);
  return {base, total, AlgebraMap{base, total, std::move(mm)}};
}

Module trivial_module(AlgebraPtr a) {
  FieldDescriptor fd = a->field();
  std::vector<Matrix> acts;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Matrix m(fd, 1, 1);
    m.at(0, 0) = a->eps(unit_vec(fd, a->dim(), i));
    acts.push_back(std::move(m));
  }
  std::optional<std::vector<Degree>> grading;
  if (a->is_graded()) grading = std::vector<Degree>{Degree(a->grading()->signature.length(), 0)};
  return Module(a, 1, std::move(acts), std::move(grading));
}

std::vector<std::pair<std::string, Module>> starter_modules(AlgebraPtr b) {
  std::vector<std::pair<std::string, Module>> out;
  out.emplace_back("regular", free_module(b, 1));
  if (b->augmentation()) out.emplace_back("trivial", trivial_module(b));
  if (auto ng = find_nil_generator(*b)) {
    Module reg = free_module(b, 1);
    for (std::size_t s = 2; s + 1 <= ng->order && s < b->dim(); ++s) {
      Subspace sub = submodule_closure(reg, {ng->powers[s]});
      Module q = quotient_module_by(reg, sub);
      out.emplace_back("cyclic" + std::to_string(s), std::move(q));
    }
  }
  return out;
}

Module random_module(AlgebraPtr a, std::size_t dim, std::uint64_t seed) {
  FieldDescriptor fd = a->field();
  std::size_t d = a->dim();
  if (dim == 0) return Module(a, 0, std::vector<Matrix>(d, Matrix(fd, 0, 0)));
  Xorshift64 rng(seed);
  auto random_scalar = [&]() {
    if (fd.kind == FieldKind::prime) return Scalar(fd, rng.next_below(fd.p));
    return Scalar::from_int(fd, static_cast<long long>(rng.next_below(9)) - 4);
  };
  std::size_t g0 = (dim + d - 1) / d;
  for (std::size_t g = g0; g <= g0 + 3; ++g) {
    Module fre = free_module(a, g);
    std::size_t target = g * d - dim;
    if (target == 0) return fre;
    for (std::size_t tries = 0; tries < 64; ++tries) {
      std::size_t count = 1 + rng.next_below(2);
      std::vector<Vec> seeds;
      for (std::size_t c = 0; c < count; ++c) {
        Vec v = zero_vec(fd, fre.dim());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = random_scalar();
        seeds.push_back(std::move(v));
      }
      Subspace sub = submodule_closure(fre, seeds);
      if (sub.dim() == target) return quotient_module_by(fre, sub);
    }
  }
  fail(Errc::budget_exceeded, "random module synthesis did not reach the requested dimension");
}

std::vector<Module> enumerate_modules(AlgebraPtr a, std::size_t max_dim, std::uint64_t budget) {
  std::vector<Module> out;
  if (auto ng = find_nil_generator(*a)) {
    for (std::size_t dd = 1; dd <= max_dim; ++dd) {
      std::vector<std::vector<std::size_t>> parts;
      std::vector<std::size_t> cur;
      partitions_into(dd, ng->order, cur, parts);
      for (const auto& p : parts) out.push_back(partition_module(a, *ng, p));
    }
    return out;
  }
  GeneratingWords gw = generating_words(*a);
  for (std::size_t dd = 1; dd <= max_dim; ++dd) {
    std::vector<Module> found = enumerate_general(a, dd, budget, gw);
    for (Module& m : found) out.push_back(std::move(m));
  }
  return out;
}

OracleResult decide_extended_oracle(const ExtensionContext& ctx, const Module& n,
                                    std::uint64_t budget, const SearchPolicy& pol) {
  if (n.algebra().get() != ctx.B.get() && !algebra_equal(*n.algebra(), *ctx.B))
    fail(Errc::algebra_mismatch, "oracle: module lives over a different algebra");
  FieldDescriptor fd = ctx.A->field();
  if (n.dim() == 0)
    return {true, Module(ctx.A, 0, std::vector<Matrix>(ctx.A->dim(), Matrix(fd, 0, 0)))};
  if (n.dim() % ctx.rho != 0) return {false, std::nullopt};
  std::size_t d = n.dim() / ctx.rho;
  std::vector<Module> cands = enumerate_modules(ctx.A, d, budget);
  bool inconclusive = false;
  for (Module& m : cands) {
    if (m.dim() != d) continue;
    BaseChangeResult bc = base_change(ctx.f, m);
    IsoResult ir = is_isomorphic(bc.module, n, pol);
    if (ir.verdict == IsoVerdict::yes) return {true, std::move(m)};
    if (ir.verdict == IsoVerdict::inconclusive) inconclusive = true;
  }
  if (inconclusive) fail(Errc::budget_exceeded, "extension oracle: isomorphism test inconclusive");
  return {false, std::nullopt};
}

}  // namespace descentkit
