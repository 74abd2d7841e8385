#include "catdesc/kernel.hpp"

#include <algorithm>


namespace catdesc {
namespace {

std::string tuple_name(const std::vector<const std::string*>& parts) {
  std::string name = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) name += ',';
    name += *parts[i];
  }
  name += ')';
  return name;
}

// Dense key for a tuple of indices below `radix`.
std::size_t pack(const std::uint32_t* t, std::size_t k, std::size_t radix) {
  std::size_t key = 0;
  for (std::size_t i = 0; i < k; ++i) key = key * radix + t[i];
  return key;
}

std::size_t dense_size(std::size_t radix, std::size_t arity) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (size > (std::size_t{1} << 26) / std::max<std::size_t>(radix, 1)) {
      throw Error(ErrorKind::ResourceExceeded,
                  "fiber power index exceeds 2^26 entries");
    }
    size *= radix;
  }
  return size;
}

struct TupleCategory {
  FinCategory category;
  std::size_t arity = 0;
  std::vector<ObjId> objects;    // component tuples, flattened
  std::vector<MorId> morphisms;  // component tuples, flattened
  std::vector<ObjId> object_index;    // dense, by packed tuple
  std::vector<MorId> morphism_index;  // dense, by packed tuple
  std::size_t object_radix = 1;
  std::size_t morphism_radix = 1;

  std::size_t num_objects() const { return objects.size() / arity; }
  std::size_t num_morphisms() const { return morphisms.size() / arity; }
  const ObjId* object_tuple(ObjId x) const {
    return objects.data() + x * arity;
  }
  const MorId* morphism_tuple(MorId m) const {
    return morphisms.data() + m * arity;
  }
  ObjId object(const ObjId* t) const {
    return object_index[pack(t, arity, object_radix)];
  }
  MorId morphism(const MorId* t) const {
    return morphism_index[pack(t, arity, morphism_radix)];
  }
};

// Tuples drawn from per-component categories, each component lying over the
// same object/morphism of the base.
TupleCategory build_tuples(const std::vector<const FinFunctor*>& legs) {
  TupleCategory out;
  const std::size_t k = legs.size();
  out.arity = k;
  const FinCategory& base = legs.front()->codomain();
  for (auto* leg : legs) {
    out.object_radix =
        std::max(out.object_radix, leg->domain().num_objects());
    out.morphism_radix =
        std::max(out.morphism_radix, leg->domain().num_morphisms());
  }
  out.object_index.assign(dense_size(out.object_radix, k), kNone);
  out.morphism_index.assign(dense_size(out.morphism_radix, k), kNone);

  // fibers[i][c] = objects of component i over base object c
  std::vector<std::vector<std::vector<ObjId>>> obj_fibers(
      k, std::vector<std::vector<ObjId>>(base.num_objects()));
  std::vector<std::vector<std::vector<MorId>>> mor_fibers(
      k, std::vector<std::vector<MorId>>(base.num_morphisms()));
  for (std::size_t i = 0; i < k; ++i) {
    const FinCategory& c = legs[i]->domain();
    for (ObjId x = 0; x < c.num_objects(); ++x) {
      obj_fibers[i][(*legs[i])(x)].push_back(x);
    }
    for (MorId m = 0; m < c.num_morphisms(); ++m) {
      mor_fibers[i][legs[i]->map(m)].push_back(m);
    }
  }

  FinCategory::Builder b;
  std::vector<const std::string*> names(k);
  // Lexicographic enumeration: component 0 in declaration order, later
  // components restricted to the fiber of the first.
  std::vector<ObjId> tuple(k);
  auto emit_objects = [&](auto&& self, std::size_t i, ObjId over) -> void {
    if (i == k) {
      for (std::size_t j = 0; j < k; ++j) {
        names[j] = &legs[j]->domain().object_name(tuple[j]);
      }
      const ObjId id = b.add_object(tuple_name(names));
      out.object_index[pack(tuple.data(), k, out.object_radix)] = id;
      out.objects.insert(out.objects.end(), tuple.begin(), tuple.end());
      return;
    }
    for (ObjId x : obj_fibers[i][over]) {
      tuple[i] = x;
      self(self, i + 1, over);
    }
  };
  const FinCategory& first = legs[0]->domain();
  for (ObjId x = 0; x < first.num_objects(); ++x) {
    tuple[0] = x;
    emit_objects(emit_objects, 1, (*legs[0])(x));
  }

  std::vector<MorId> mtuple(k);
  std::vector<ObjId> src(k), tgt(k);
  std::vector<ObjId> msrc, mtgt;
  auto emit_morphisms = [&](auto&& self, std::size_t i, MorId over) -> void {
    if (i == k) {
      for (std::size_t j = 0; j < k; ++j) {
        const FinCategory& c = legs[j]->domain();
        names[j] = &c.morphism_name(mtuple[j]);
        src[j] = c.source(mtuple[j]);
        tgt[j] = c.target(mtuple[j]);
      }
      msrc.push_back(out.object(src.data()));
      mtgt.push_back(out.object(tgt.data()));
      const MorId id = b.add_morphism(tuple_name(names), msrc.back(),
                                      mtgt.back());
      out.morphism_index[pack(mtuple.data(), k, out.morphism_radix)] = id;
      out.morphisms.insert(out.morphisms.end(), mtuple.begin(), mtuple.end());
      return;
    }
    for (MorId m : mor_fibers[i][over]) {
      mtuple[i] = m;
      self(self, i + 1, over);
    }
  };
  for (MorId m = 0; m < first.num_morphisms(); ++m) {
    mtuple[0] = m;
    emit_morphisms(emit_morphisms, 1, legs[0]->map(m));
  }

  const std::size_t objects = out.num_objects();
  const std::size_t n = out.num_morphisms();
  for (ObjId x = 0; x < objects; ++x) {
    for (std::size_t j = 0; j < k; ++j) {
      mtuple[j] = legs[j]->domain().identity(out.object_tuple(x)[j]);
    }
    b.set_identity(x, out.morphism(mtuple.data()));
  }

  // Outgoing morphisms per object tuple, for enumerating composable pairs.
  std::vector<std::size_t> offset(objects + 1, 0);
  for (MorId m = 0; m < n; ++m) ++offset[msrc[m] + 1];
  for (std::size_t x = 0; x < objects; ++x) offset[x + 1] += offset[x];
  std::vector<MorId> outgoing(n);
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (MorId m = 0; m < n; ++m) outgoing[fill[msrc[m]]++] = m;
  }
  std::vector<MorId> table(n * n, kNone);
  for (MorId f = 0; f < n; ++f) {
    const MorId* ft = out.morphism_tuple(f);
    for (std::size_t i = offset[mtgt[f]]; i < offset[mtgt[f] + 1]; ++i) {
      const MorId g = outgoing[i];
      const MorId* gt = out.morphism_tuple(g);
      for (std::size_t j = 0; j < k; ++j) {
        mtuple[j] = legs[j]->domain().compose(gt[j], ft[j]);
      }
      table[static_cast<std::size_t>(g) * n + f] = out.morphism(mtuple.data());
    }
  }
  b.set_composition_table(std::move(table));
  out.category = std::move(b).build(Validation::Structural);
  return out;
}

// Functor between tuple categories given by a component selection:
// output component i is input component pick[i].
FinFunctor reindex(const TupleCategory& from, const CategoryPtr& from_ptr,
                   const TupleCategory& to, const CategoryPtr& to_ptr,
                   const std::vector<std::size_t>& pick) {
  std::vector<ObjId> objects;
  std::vector<MorId> morphisms;
  std::vector<std::uint32_t> t(pick.size());
  for (ObjId x = 0; x < from.num_objects(); ++x) {
    for (std::size_t i = 0; i < pick.size(); ++i) {
      t[i] = from.object_tuple(x)[pick[i]];
    }
    objects.push_back(to.object(t.data()));
  }
  for (MorId m = 0; m < from.num_morphisms(); ++m) {
    for (std::size_t i = 0; i < pick.size(); ++i) {
      t[i] = from.morphism_tuple(m)[pick[i]];
    }
    morphisms.push_back(to.morphism(t.data()));
  }
  return FinFunctor::unchecked(from_ptr, to_ptr, std::move(objects),
                               std::move(morphisms));
}

// Projection of a tuple category onto one component.
FinFunctor project(const TupleCategory& from, const CategoryPtr& from_ptr,
                   const CategoryPtr& to_ptr, std::size_t component) {
  std::vector<ObjId> objects;
  std::vector<MorId> morphisms;
  for (ObjId x = 0; x < from.num_objects(); ++x) {
    objects.push_back(from.object_tuple(x)[component]);
  }
  for (MorId m = 0; m < from.num_morphisms(); ++m) {
    morphisms.push_back(from.morphism_tuple(m)[component]);
  }
  return FinFunctor::unchecked(from_ptr, to_ptr, std::move(objects),
                               std::move(morphisms));
}

// The diagonal-type map X0 → X1, u ↦ (u, u).
FinFunctor diagonal(const FinCategory& x0, const CategoryPtr& x0_ptr,
                    const TupleCategory& to, const CategoryPtr& to_ptr) {
  std::vector<ObjId> objects;
  std::vector<MorId> morphisms;
  for (ObjId u = 0; u < x0.num_objects(); ++u) {
    const ObjId t[2] = {u, u};
    objects.push_back(to.object(t));
  }
  for (MorId f = 0; f < x0.num_morphisms(); ++f) {
    const MorId t[2] = {f, f};
    morphisms.push_back(to.morphism(t));
  }
  return FinFunctor::unchecked(x0_ptr, to_ptr, std::move(objects),
                               std::move(morphisms));
}

}  // namespace

Pullback pullback(const FinFunctor& f, const FinFunctor& g) {
  if (!same_category(f.codomain(), g.codomain())) {
    throw Error(ErrorKind::CodomainMismatch,
                "pullback legs have different codomains");
  }
  TupleCategory t = build_tuples({&f, &g});
  CategoryPtr c = share(std::move(t.category));
  return Pullback{c, project(t, c, f.domain_ptr(), 0),
                  project(t, c, g.domain_ptr(), 1)};
}

FinCategory fiber_power(const FinFunctor& p, int arity) {
  if (arity == 2) return build_tuples({&p, &p}).category;
  if (arity == 3) return build_tuples({&p, &p, &p}).category;
  throw std::invalid_argument("fiber_power: arity must be 2 or 3");
}

KernelPairDiagram higher_kernel(const FinFunctor& p) {
  TupleCategory t1 = build_tuples({&p, &p});
  TupleCategory t2 = build_tuples({&p, &p, &p});
  CategoryPtr x0 = p.domain_ptr();
  CategoryPtr x1 = share(std::move(t1.category));
  CategoryPtr x2 = share(std::move(t2.category));

  FinFunctor d0 = project(t1, x1, x0, 1);
  FinFunctor d1 = project(t1, x1, x0, 0);
  FinFunctor s0 = diagonal(*x0, x0, t1, x1);
  std::vector<FinFunctor> faces{
      reindex(t2, x2, t1, x1, {1, 2}),
      reindex(t2, x2, t1, x1, {0, 2}),
      reindex(t2, x2, t1, x1, {0, 1}),
  };
  std::vector<FinFunctor> degeneracies{
      reindex(t1, x1, t2, x2, {0, 0, 1}),
      reindex(t1, x1, t2, x2, {0, 1, 1}),
  };
  return KernelPairDiagram{p,  x0, x1,
                           x2, d0, d1,
                           s0, std::move(faces), std::move(degeneracies)};
}

namespace {

// Pointwise comparison of composite maps without re-validating functors.
struct Chain {
  std::vector<const FinFunctor*> steps;  // applied left to right

  ObjId object(ObjId x) const {
    for (auto* f : steps) x = (*f)(x);
    return x;
  }
  MorId morphism(MorId m) const {
    for (auto* f : steps) m = f->map(m);
    return m;
  }
};

CheckResult compare(const FinCategory& source, const Chain& lhs,
                    const Chain& rhs, const std::string& label) {
  for (ObjId x = 0; x < source.num_objects(); ++x) {
    if (lhs.object(x) != rhs.object(x)) {
      return CheckResult::fail(label + " fails at object " +
                               source.object_name(x));
    }
  }
  for (MorId m = 0; m < source.num_morphisms(); ++m) {
    if (lhs.morphism(m) != rhs.morphism(m)) {
      return CheckResult::fail(label + " fails at morphism " +
                               source.morphism_name(m));
    }
  }
  return CheckResult::pass();
}

}  // namespace

CheckResult validate_simplicial(const KernelPairDiagram& d) {
  if (d.faces.size() != 3 || d.degeneracies.size() != 2) {
    return CheckResult::fail("diagram needs 3 top faces and 2 degeneracies");
  }
  const auto& f = d.faces;
  const auto& s = d.degeneracies;
  const Chain id{};
  struct Identity {
    const FinCategory* source;
    Chain lhs;
    Chain rhs;
    const char* label;
  };
  const std::vector<Identity> identities{
      {d.x0.get(), {{&d.s0, &d.d0}}, id, "d0 s0 = id"},
      {d.x0.get(), {{&d.s0, &d.d1}}, id, "d1 s0 = id"},
      {d.x2.get(), {{&f[1], &d.d0}}, {{&f[0], &d.d0}}, "d0 face1 = d0 face0"},
      {d.x2.get(), {{&f[2], &d.d0}}, {{&f[0], &d.d1}}, "d0 face2 = d1 face0"},
      {d.x2.get(), {{&f[2], &d.d1}}, {{&f[1], &d.d1}}, "d1 face2 = d1 face1"},
      {d.x1.get(), {{&s[0], &f[0]}}, id, "face0 deg0 = id"},
      {d.x1.get(), {{&s[0], &f[1]}}, id, "face1 deg0 = id"},
      {d.x1.get(), {{&s[1], &f[1]}}, id, "face1 deg1 = id"},
      {d.x1.get(), {{&s[1], &f[2]}}, id, "face2 deg1 = id"},
      {d.x1.get(), {{&s[1], &f[0]}}, {{&d.d0, &d.s0}}, "face0 deg1 = s0 d0"},
      {d.x1.get(), {{&s[0], &f[2]}}, {{&d.d1, &d.s0}}, "face2 deg0 = s0 d1"},
      {d.x0.get(), {{&d.s0, &s[0]}}, {{&d.s0, &s[1]}}, "deg0 s0 = deg1 s0"},
      {d.x1.get(), {{&d.d0, &d.p}}, {{&d.d1, &d.p}}, "p d0 = p d1"},
  };
  for (const auto& identity : identities) {
    if (auto r = compare(*identity.source, identity.lhs, identity.rhs,
                         identity.label);
        !r) {
      return r;
    }
  }
  return CheckResult::pass();
}

}  // namespace catdesc
