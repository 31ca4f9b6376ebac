#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace nonloc {

// One tensor factor of the global Hilbert space, owned by a single party.
struct Register {
  std::string name;
  int dim = 1;
  int party = 0;
};

// Ordered list of registers; position 0 is the slowest-varying index of the
// global space (standard Kronecker convention).
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> registers);

  const std::vector<Register> &registers() const { return registers_; }
  std::size_t count() const { return registers_.size(); }
  const Register &reg(std::size_t i) const { return registers_.at(i); }

  std::size_t total_dim() const;
  int party_count() const;

  // Index of the register with the given name; throws if absent.
  std::size_t find(const std::string &name) const;
  // Registers owned by `party`, in layout order.
  std::vector<std::size_t> party_registers(int party) const;
  std::size_t party_dim(int party) const;

  std::size_t sub_dim(const std::vector<std::size_t> &indices) const;

  // Global index <-> per-register digits (digit i indexes register i).
  std::vector<int> digits(std::size_t global_index) const;
  std::size_t index(const std::vector<int> &digits) const;

  // Extracts the sub-index of `indices` (in the given order) from digits.
  std::size_t sub_index(const std::vector<int> &digits,
                        const std::vector<std::size_t> &indices) const;

  // Layout holding only the listed registers, order preserved.
  RegisterLayout restricted(const std::vector<std::size_t> &keep) const;

 private:
  std::vector<Register> registers_;
};

}  // namespace nonloc
