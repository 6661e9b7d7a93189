#include "canontop/formal_sum.hpp"

namespace canontop {

CoeffGroup CoeffGroup::finite(GroupPtr g) {
  if (!g) throw std::invalid_argument("finite coefficient group needs a table");
  return CoeffGroup(std::move(g));
}

std::vector<Coeff> CoeffGroup::non_identity_elements() const {
  if (!finite_) throw std::invalid_argument("ℤ has infinitely many non-identity elements");
  std::vector<Coeff> out;
  for (int a = 0; a < finite_->order(); ++a)
    if (a != finite_->identity()) out.emplace_back(a);
  return out;
}

std::string CoeffGroup::name() const {
  if (!finite_) return "Z";
  return "finite group of order " + std::to_string(finite_->order());
}

std::string CoeffGroup::label(const Coeff& c) const {
  if (!finite_) return c.get_str();
  return finite_->label(static_cast<int>(c.get_si()));
}

}  // namespace canontop
