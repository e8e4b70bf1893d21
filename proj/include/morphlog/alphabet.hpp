#pragma once

#include <optional>
#include <string>
#include <vector>

namespace morphlog {

constexpr int kMaxAtoms = 20;

/// Ordered atom alphabet. Atom order is fixed and defines bit positions in
/// worlds; every canonical output uses this order.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> atoms);

    int size() const { return static_cast<int>(atoms_.size()); }
    const std::string& name(int index) const { return atoms_[index]; }
    const std::vector<std::string>& atoms() const { return atoms_; }
    std::optional<int> index_of(const std::string& name) const;

    /// "a,b,c" -> Alphabet({a,b,c})
    static Alphabet from_spec(const std::string& comma_list);

    bool operator==(const Alphabet& other) const { return atoms_ == other.atoms_; }

private:
    std::vector<std::string> atoms_;
};

bool valid_atom_name(const std::string& name);

}  // namespace morphlog
