#include "catdesc/laxepi.hpp"

#include "catdesc/union_find.hpp"

namespace catdesc {
namespace {

struct Edge {
  ObjId from;
  ObjId to;
  MorId image;
};

// Domain data the coend needs: object images and generating morphisms.
struct Shape {
  const FinCategory& b;
  std::vector<ObjId> object_image;
  std::vector<std::string> object_names;
  std::vector<Edge> edges;
};

Shape shape_of(const FinFunctor& p) {
  Shape s{p.codomain(), p.object_map(), {}, {}};
  const FinCategory& e = p.domain();
  for (ObjId a = 0; a < e.num_objects(); ++a) {
    s.object_names.push_back(e.object_name(a));
  }
  for (MorId w = 0; w < e.num_morphisms(); ++w) {
    if (!e.is_identity(w)) s.edges.push_back({e.source(w), e.target(w), p.map(w)});
  }
  return s;
}

Shape shape_of(const PresentedFunctor& k) {
  Shape s{*k.codomain, k.object_map, k.domain->nodes, {}};
  for (GenId g = 0; g < k.domain->generators.size(); ++g) {
    const Generator& gen = k.domain->generators[g];
    s.edges.push_back({gen.source, gen.target, k.generator_map[g]});
  }
  return s;
}

CoendCell compute_cell(const Shape& s, ObjId x, ObjId y) {
  const FinCategory& b = s.b;
  const std::size_t k = s.object_image.size();
  std::vector<std::size_t> offset(k + 1, 0);
  for (ObjId a = 0; a < k; ++a) {
    const ObjId pa = s.object_image[a];
    offset[a + 1] = offset[a] + b.hom(x, pa).size() * b.hom(pa, y).size();
  }
  auto index = [&](ObjId a, MorId u, MorId v) {
    return offset[a] + b.hom_position(u) * b.hom(s.object_image[a], y).size() +
           b.hom_position(v);
  };

  UnionFind uf(offset[k]);
  for (const Edge& w : s.edges) {
    const ObjId pa = s.object_image[w.from];
    const ObjId pa2 = s.object_image[w.to];
    for (MorId u : b.hom(x, pa)) {
      for (MorId v : b.hom(pa2, y)) {
        uf.unite(index(w.from, u, b.compose(v, w.image)),
                 index(w.to, b.compose(w.image, u), v));
      }
    }
  }

  CoendCell cell{x, y, {}, {}, true, true};
  std::vector<std::size_t> class_of(offset[k], kNone);
  std::vector<std::size_t> hit(b.num_morphisms(), kNone);
  for (ObjId a = 0; a < k; ++a) {
    const ObjId pa = s.object_image[a];
    for (MorId u : b.hom(x, pa)) {
      for (MorId v : b.hom(pa, y)) {
        const std::size_t i = index(a, u, v);
        const MorId composite = b.compose(v, u);
        const std::size_t root = uf.find(i);
        if (root == i) {
          class_of[i] = cell.classes.size();
          cell.classes.push_back({a, u, v});
          cell.image.push_back(composite);
          if (hit[composite] != kNone) cell.injective = false;
          hit[composite] = class_of[i];
        } else if (cell.image[class_of[root]] != composite) {
          throw Error(ErrorKind::ConsistencyViolation,
                      "coend map not constant on a class at (" +
                          b.object_name(x) + ", " + b.object_name(y) + ")");
        }
      }
    }
  }
  for (MorId m : b.hom(x, y)) {
    if (hit[m] == kNone) cell.surjective = false;
  }
  return cell;
}

std::string describe(const Shape& s, const Factorization& f) {
  return s.b.morphism_name(f.v) + " o " + s.b.morphism_name(f.u) + " via " +
         s.object_names[f.via];
}

CheckResult check(const Shape& s) {
  const FinCategory& b = s.b;
  for (ObjId x = 0; x < b.num_objects(); ++x) {
    for (ObjId y = 0; y < b.num_objects(); ++y) {
      const CoendCell cell = compute_cell(s, x, y);
      const std::string where =
          "(" + b.object_name(x) + ", " + b.object_name(y) + ")";
      if (!cell.surjective) {
        for (MorId m : b.hom(x, y)) {
          bool hit = false;
          for (MorId i : cell.image) hit = hit || i == m;
          if (!hit) {
            return CheckResult::fail(
                "coend map not surjective at " + where + ": '" +
                b.morphism_name(m) + "' has no factorization through p" +
                (cell.classes.empty() ? " (empty coend)" : ""));
          }
        }
      }
      if (!cell.injective) {
        for (std::size_t i = 0; i < cell.classes.size(); ++i) {
          for (std::size_t j = 0; j < i; ++j) {
            if (cell.image[i] != cell.image[j]) continue;
            return CheckResult::fail(
                "coend map not injective at " + where + ": classes of " +
                describe(s, cell.classes[j]) + " and " +
                describe(s, cell.classes[i]) + " both give '" +
                b.morphism_name(cell.image[i]) + "'");
          }
        }
      }
    }
  }
  return CheckResult::pass();
}

}  // namespace

bool CoendTable::bijective() const {
  for (const auto& c : cells) {
    if (!c.injective || !c.surjective) return false;
  }
  return true;
}

CoendTable coend_table(const FinFunctor& p) {
  const Shape s = shape_of(p);
  CoendTable t;
  for (ObjId x = 0; x < s.b.num_objects(); ++x) {
    for (ObjId y = 0; y < s.b.num_objects(); ++y) {
      t.cells.push_back(compute_cell(s, x, y));
    }
  }
  return t;
}

CheckResult check_lax_epimorphism(const FinFunctor& p) {
  return check(shape_of(p));
}

bool is_lax_epimorphism(const FinFunctor& p) {
  return check_lax_epimorphism(p).ok;
}

CheckResult check_lax_epimorphism_presented(const PresentedFunctor& k) {
  return check(shape_of(k));
}

bool is_lax_epimorphism_presented(const PresentedFunctor& k) {
  return check_lax_epimorphism_presented(k).ok;
}

}  // namespace catdesc
