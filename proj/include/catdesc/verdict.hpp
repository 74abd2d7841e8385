#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace catdesc {

/// Tri-state outcome: a value, a refutation with witness, or the resource
/// bound that was exhausted before either could be established.
template <class T>
class Verdict {
 public:
  struct Yes {
    T value;
  };
  struct No {
    std::string witness;
  };
  struct Undecided {
    std::string bound;
  };

  /// Undecided with an empty bound; placeholder for fields filled later.
  Verdict() : state_(Undecided{}) {}

  static Verdict yes(T value) { return Verdict(Yes{std::move(value)}); }
  static Verdict no(std::string witness) {
    return Verdict(No{std::move(witness)});
  }
  static Verdict undecided(std::string bound) {
    return Verdict(Undecided{std::move(bound)});
  }

  bool is_yes() const { return std::holds_alternative<Yes>(state_); }
  bool is_no() const { return std::holds_alternative<No>(state_); }
  bool is_undecided() const {
    return std::holds_alternative<Undecided>(state_);
  }

  const T& value() const { return std::get<Yes>(state_).value; }
  T& value() { return std::get<Yes>(state_).value; }
  const std::string& witness() const { return std::get<No>(state_).witness; }
  const std::string& bound() const { return std::get<Undecided>(state_).bound; }

  std::string_view tag() const {
    return is_yes() ? "Yes" : is_no() ? "No" : "Undecided";
  }

  /// Same No/Undecided payload, new value type.
  template <class U>
  Verdict<U> forward() const {
    if (is_no()) return Verdict<U>::no(witness());
    return Verdict<U>::undecided(bound());
  }

 private:
  explicit Verdict(std::variant<Yes, No, Undecided> s) : state_(std::move(s)) {}

  std::variant<Yes, No, Undecided> state_;
};

}  // namespace catdesc
