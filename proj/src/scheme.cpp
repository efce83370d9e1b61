#include "lsrk/scheme.hpp"

namespace lsrk {

std::string to_string(NumberKind kind) { return kind == NumberKind::rational ? "rational" : "decimal"; }

namespace {

template <class T>
bool optional_equal(const std::optional<T>& x, const std::optional<T>& y) {
  if (x.has_value() != y.has_value()) return false;
  return !x || *x == *y;
}

template <class T>
bool forms_equal(const SchemeForms<T>& x, const SchemeForms<T>& y) {
  return optional_equal(x.tableau, y.tableau) && optional_equal(x.alpha, y.alpha) &&
         optional_equal(x.lowstorage, y.lowstorage);
}

template <class T>
void check_same_method(const ButcherTableau<T>& t, const ButcherTableau<T>& other, const std::string& source) {
  const int s = t.stages();
  if (other.stages() != s) throw ValidationError("", "representations differ in stage count");
  for (int i = 2; i <= s + 1; ++i) {
    for (int k = 1; k < i; ++k) {
      if (!nearly_equal(other.a(i, k), t.a(i, k))) {
        throw ValidationError(i == s + 1 ? "b" + detail::idx(k) : "a" + detail::idx(i, k),
                              to_text(t.a(i, k)) + " does not match the value " + to_text(other.a(i, k)) +
                                  " implied by " + source);
      }
    }
  }
}

}  // namespace

Scheme::Scheme(std::string name, int order, SchemeForms<Rational> forms, std::string provenance)
    : name_(std::move(name)), order_(order), forms_(std::move(forms)), provenance_(std::move(provenance)) {
  validate(std::get<SchemeForms<Rational>>(forms_));
}

Scheme::Scheme(std::string name, int order, SchemeForms<ExtFloat> forms, std::string provenance)
    : name_(std::move(name)), order_(order), forms_(std::move(forms)), provenance_(std::move(provenance)) {
  validate(std::get<SchemeForms<ExtFloat>>(forms_));
}

template <class T>
void Scheme::validate(const SchemeForms<T>& f) const {
  if (name_.empty()) throw ValidationError("name", "scheme name must not be empty");
  if (!f.tableau && !f.alpha && !f.lowstorage) throw ValidationError("", "scheme holds no representation");
  std::vector<const std::vector<T>*> nodes;
  if (f.tableau) nodes.push_back(&f.tableau->c_values());
  if (f.alpha) nodes.push_back(&f.alpha->c_values());
  if (f.lowstorage) nodes.push_back(&f.lowstorage->c_values());
  for (const auto* c : nodes) {
    if (c->size() != nodes.front()->size()) throw ValidationError("", "representations differ in stage count");
    for (std::size_t i = 0; i < c->size(); ++i) {
      if (!nearly_equal((*c)[i], (*nodes.front())[i])) {
        throw ValidationError("c" + detail::idx(static_cast<int>(i) + 1), "representations disagree on this node");
      }
    }
  }
  if (f.tableau && f.lowstorage) check_same_method(*f.tableau, lowstorage_to_a(*f.lowstorage), "A and B");
  if (f.tableau && f.alpha) check_same_method(*f.tableau, alpha_to_a(*f.alpha), "alpha and beta");
}

int Scheme::stages() const {
  return std::visit(
      [](const auto& f) {
        if (f.tableau) return f.tableau->stages();
        if (f.lowstorage) return f.lowstorage->stages();
        return f.alpha->stages();
      },
      forms_);
}

Scheme Scheme::renamed(std::string name) const {
  Scheme copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool operator==(const Scheme& x, const Scheme& y) {
  if (x.name_ != y.name_ || x.order_ != y.order_ || x.provenance_ != y.provenance_ ||
      x.forms_.index() != y.forms_.index()) {
    return false;
  }
  if (x.number_kind() == NumberKind::rational) return forms_equal(x.rational(), y.rational());
  return forms_equal(x.decimal(), y.decimal());
}

ButcherTableau<double> double_tableau(const Scheme& scheme) {
  return std::visit([](const auto& f) { return to_double(tableau_of(f)); }, scheme.forms_variant());
}

LowStorageForm<double> double_lowstorage(const Scheme& scheme) {
  return std::visit([](const auto& f) { return to_double(lowstorage_of(f)); }, scheme.forms_variant());
}

}  // namespace lsrk
