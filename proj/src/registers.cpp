#include "nonloc/registers.hpp"

#include <stdexcept>

namespace nonloc {

RegisterLayout::RegisterLayout(std::vector<Register> registers)
    : registers_(std::move(registers)) {
  for (const Register &r : registers_) {
    if (r.dim < 1)
      throw std::invalid_argument("RegisterLayout: dimension must be >= 1");
    if (r.party < 0)
      throw std::invalid_argument("RegisterLayout: negative party");
  }
  for (std::size_t i = 0; i < registers_.size(); ++i)
    for (std::size_t j = i + 1; j < registers_.size(); ++j)
      if (registers_[i].name == registers_[j].name)
        throw std::invalid_argument("RegisterLayout: duplicate register '" +
                                    registers_[i].name + "'");
}

std::size_t RegisterLayout::total_dim() const {
  std::size_t d = 1;
  for (const Register &r : registers_) d *= static_cast<std::size_t>(r.dim);
  return d;
}

int RegisterLayout::party_count() const {
  int n = 0;
  for (const Register &r : registers_) n = std::max(n, r.party + 1);
  return n;
}

std::size_t RegisterLayout::find(const std::string &name) const {
  for (std::size_t i = 0; i < registers_.size(); ++i)
    if (registers_[i].name == name) return i;
  throw std::out_of_range("RegisterLayout: no register named '" + name + "'");
}

std::vector<std::size_t> RegisterLayout::party_registers(int party) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < registers_.size(); ++i)
    if (registers_[i].party == party) out.push_back(i);
  return out;
}

std::size_t RegisterLayout::party_dim(int party) const {
  return sub_dim(party_registers(party));
}

std::size_t RegisterLayout::sub_dim(
    const std::vector<std::size_t> &indices) const {
  std::size_t d = 1;
  for (std::size_t i : indices)
    d *= static_cast<std::size_t>(registers_.at(i).dim);
  return d;
}

std::vector<int> RegisterLayout::digits(std::size_t global_index) const {
  std::vector<int> out(registers_.size(), 0);
  for (std::size_t i = registers_.size(); i-- > 0;) {
    const std::size_t d = static_cast<std::size_t>(registers_[i].dim);
    out[i] = static_cast<int>(global_index % d);
    global_index /= d;
  }
  return out;
}

std::size_t RegisterLayout::index(const std::vector<int> &digits) const {
  if (digits.size() != registers_.size())
    throw std::invalid_argument("RegisterLayout: digit count mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= registers_[i].dim)
      throw std::out_of_range("RegisterLayout: digit out of range");
    idx = idx * static_cast<std::size_t>(registers_[i].dim) +
          static_cast<std::size_t>(digits[i]);
  }
  return idx;
}

std::size_t RegisterLayout::sub_index(
    const std::vector<int> &digits,
    const std::vector<std::size_t> &indices) const {
  std::size_t idx = 0;
  for (std::size_t i : indices)
    idx = idx * static_cast<std::size_t>(registers_.at(i).dim) +
          static_cast<std::size_t>(digits.at(i));
  return idx;
}

RegisterLayout RegisterLayout::restricted(
    const std::vector<std::size_t> &keep) const {
  std::vector<Register> regs;
  for (std::size_t i : keep) regs.push_back(registers_.at(i));
  return RegisterLayout(std::move(regs));
}

}  // namespace nonloc
