#pragma once

#include <string>

#include "catdesc/corpus.hpp"
#include "catdesc/fincat.hpp"
#include "catdesc/io.hpp"

namespace test {

inline std::string fixture(const std::string& name) {
  return std::string(CATDESC_FIXTURES) + "/" + name;
}

inline catdesc::CategoryPtr category(catdesc::RawCategory raw) {
  return catdesc::share(catdesc::build_category(std::move(raw)));
}

inline catdesc::FinFunctor functor(
    const catdesc::CategoryPtr& e, const catdesc::CategoryPtr& b,
    std::map<std::string, std::string> objects,
    std::map<std::string, std::string> morphisms) {
  return catdesc::validate_functor({std::move(objects), std::move(morphisms)},
                                   e, b);
}

inline catdesc::FinFunctor curated(const std::string& name) {
  for (auto& c : catdesc::curated_functors()) {
    if (c.name == name) return c.functor;
  }
  throw std::runtime_error("no curated functor " + name);
}

// Rebuilds f through the checking constructor.
inline catdesc::FinFunctor recheck(const catdesc::FinFunctor& f) {
  return catdesc::FinFunctor(f.domain_ptr(), f.codomain_ptr(), f.object_map(),
                             f.morphism_map());
}

}  // namespace test
