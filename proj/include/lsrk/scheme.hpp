#pragma once

#include <optional>
#include <string>
#include <variant>

#include "lsrk/convert.hpp"
#include "lsrk/ext_float.hpp"
#include "lsrk/rational.hpp"
#include "lsrk/tableau.hpp"

namespace lsrk {

enum class NumberKind { rational, decimal };

std::string to_string(NumberKind kind);

template <class T>
struct SchemeForms {
  std::optional<ButcherTableau<T>> tableau;
  std::optional<AlphaForm<T>> alpha;
  std::optional<LowStorageForm<T>> lowstorage;
};

/// The a-form, whichever representation it has to be rebuilt from.
template <class T>
ButcherTableau<T> tableau_of(const SchemeForms<T>& f) {
  if (f.tableau) return *f.tableau;
  if (f.lowstorage) return lowstorage_to_a(*f.lowstorage);
  return alpha_to_a(*f.alpha);
}

/// The A-form; throws NotTwoNStorageError when none exists.
template <class T>
LowStorageForm<T> lowstorage_of(const SchemeForms<T>& f) {
  if (f.lowstorage) return *f.lowstorage;
  return a_to_lowstorage(tableau_of(f));
}

/// A named method. Holds at least one representation; all representations
/// present have the same stage count and nodes.
class Scheme {
 public:
  Scheme(std::string name, int order, SchemeForms<Rational> forms, std::string provenance = {});
  Scheme(std::string name, int order, SchemeForms<ExtFloat> forms, std::string provenance = {});

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  const std::string& provenance() const { return provenance_; }
  NumberKind number_kind() const {
    return std::holds_alternative<SchemeForms<Rational>>(forms_) ? NumberKind::rational : NumberKind::decimal;
  }
  int stages() const;

  Scheme renamed(std::string name) const;

  /// Throws std::bad_variant_access if the number kind does not match.
  template <class T>
  const SchemeForms<T>& forms() const {
    return std::get<SchemeForms<T>>(forms_);
  }
  const SchemeForms<Rational>& rational() const { return forms<Rational>(); }
  const SchemeForms<ExtFloat>& decimal() const { return forms<ExtFloat>(); }
  const std::variant<SchemeForms<Rational>, SchemeForms<ExtFloat>>& forms_variant() const { return forms_; }

  friend bool operator==(const Scheme& x, const Scheme& y);

 private:
  template <class T>
  void validate(const SchemeForms<T>& f) const;

  std::string name_;
  int order_;
  std::variant<SchemeForms<Rational>, SchemeForms<ExtFloat>> forms_;
  std::string provenance_;
};

/// Tableau in double precision, whatever the number kind.
ButcherTableau<double> double_tableau(const Scheme& scheme);
/// A-form in double precision; throws NotTwoNStorageError if there is none.
LowStorageForm<double> double_lowstorage(const Scheme& scheme);

}  // namespace lsrk
