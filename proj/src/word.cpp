#include "nil2/word.hpp"

#include <algorithm>

namespace nil2 {

std::size_t Word::max_gen_index() const {
  std::size_t m = 0;
  bool any = false;
  if (kind == Kind::Gen) return gen + 1;
  for (const auto& s : sub) {
    std::size_t v = s.max_gen_index();
    if (v) {
      m = std::max(m, v);
      any = true;
    }
  }
  return any ? m : 0;
}

std::string Word::print(const std::vector<std::string>& names) const {
  switch (kind) {
    case Kind::Empty:
      return "()^0";
    case Kind::Gen:
      return names[gen];
    case Kind::Power: {
      const Word& b = sub[0];
      std::string e = "^" + std::to_string(exp);
      if (b.kind == Kind::Gen) return b.print(names) + e;
      if (b.kind == Kind::Bracket) return b.print(names) + e;
      return "(" + b.print(names) + ")" + e;
    }
    case Kind::Bracket:
      return "[" + sub[0].print(names) + "," + sub[1].print(names) + "]";
    case Kind::Concat: {
      std::string s;
      for (std::size_t i = 0; i < sub.size(); ++i) {
        if (i) s += " ";
        s += sub[i].print(names);
      }
      return s;
    }
  }
  return "";
}

}  // namespace nil2
