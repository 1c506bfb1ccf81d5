#pragma once

#include <string>
#include <vector>

#include "nil2/fp_group.hpp"

// Presentation text format:
//
//   group <name> p=<prime> n=<int> gens <id>,... rels <word>,... ;
//
// word := term+ ; term := id | id^int | [word,word] (optionally ^int) |
// (word)^int; integers may be negative; '#' starts a line comment.  rels may
// be omitted for relatively free groups.

namespace nil2 {

struct NamedPresentation {
  std::string name;
  Presentation pres;
};

// warnings (e.g. nested brackets, which always evaluate to the identity in
// class 2) are appended to *lints when given
std::vector<NamedPresentation> parse_presentations(
    const std::string& text, bool allow_even = false,
    std::vector<std::string>* lints = nullptr);
// first (or only) group in the text
NamedPresentation parse_presentation(const std::string& text,
                                     bool allow_even = false,
                                     std::vector<std::string>* lints = nullptr);

// parse a comma-separated list of words over the group's generators
std::vector<Word> parse_words(const std::string& text, const Presentation& pres,
                              std::vector<std::string>* lints = nullptr);

std::string print_presentation(const NamedPresentation& np);

}  // namespace nil2
