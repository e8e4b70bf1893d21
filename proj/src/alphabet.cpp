#include "morphlog/alphabet.hpp"

#include <set>
#include <sstream>

#include "morphlog/errors.hpp"

namespace morphlog {

bool valid_atom_name(const std::string& name) {
    if (name.empty()) return false;
    if (name[0] < 'a' || name[0] > 'z') return false;
    for (char c : name.substr(1)) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

Alphabet::Alphabet(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw Error("alphabet must contain at least one atom");
    if (static_cast<int>(atoms_.size()) > kMaxAtoms)
        throw ScaleExceeded("alphabet larger than " + std::to_string(kMaxAtoms) + " atoms");
    std::set<std::string> seen;
    for (const auto& a : atoms_) {
        if (!valid_atom_name(a)) throw Error("invalid atom name '" + a + "'");
        if (!seen.insert(a).second) throw Error("duplicate atom name '" + a + "'");
    }
}

std::optional<int> Alphabet::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (atoms_[i] == name) return i;
    return std::nullopt;
}

Alphabet Alphabet::from_spec(const std::string& comma_list) {
    std::vector<std::string> atoms;
    std::stringstream ss(comma_list);
    std::string item;
    while (std::getline(ss, item, ',')) atoms.push_back(item);
    return Alphabet(std::move(atoms));
}

}  // namespace morphlog
