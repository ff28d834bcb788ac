#pragma once

#include "defeasible/model.hpp"
#include "defeasible/theory_io.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace testing_support {

inline defeasible::Theory corpus(const std::string& name) {
    return defeasible::load_theory_file(std::string(CORPUS_DIR) + "/" + name);
}

inline defeasible::Literal lit(const defeasible::Theory& t, std::string_view text) {
    auto q = t.find_literal(text);
    if (!q) throw std::invalid_argument("no literal " + std::string(text));
    return *q;
}

inline std::set<std::string> names_with(const defeasible::Theory& t, const defeasible::ClosureSet& c,
                                        defeasible::Tag tag, defeasible::Status s) {
    std::set<std::string> out;
    for (auto q : c.with_status(tag, s)) out.insert(t.literal_name(q));
    return out;
}

inline std::set<std::string> plus(const defeasible::Theory& t, const defeasible::ClosureSet& c, defeasible::Tag tag) {
    return names_with(t, c, tag, defeasible::Status::Plus);
}

}  // namespace testing_support
