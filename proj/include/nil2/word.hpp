#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nil2 {

// Relator/word syntax tree.  Words are evaluated through group operations,
// never rewritten textually; nested brackets are legal (they evaluate to the
// identity in class 2).
struct Word {
  enum class Kind { Empty, Gen, Power, Bracket, Concat };
  Kind kind = Kind::Empty;
  std::size_t gen = 0;     // Kind::Gen
  int64_t exp = 1;         // Kind::Power
  std::vector<Word> sub;   // Power: 1, Bracket: 2, Concat: any

  static Word empty() { return {}; }
  static Word make_gen(std::size_t i) {
    Word w;
    w.kind = Kind::Gen;
    w.gen = i;
    return w;
  }
  static Word power(Word base, int64_t e) {
    Word w;
    w.kind = Kind::Power;
    w.exp = e;
    w.sub.push_back(std::move(base));
    return w;
  }
  static Word bracket(Word a, Word b) {
    Word w;
    w.kind = Kind::Bracket;
    w.sub.push_back(std::move(a));
    w.sub.push_back(std::move(b));
    return w;
  }
  static Word concat(std::vector<Word> parts) {
    if (parts.size() == 1) return std::move(parts[0]);
    Word w;
    w.kind = Kind::Concat;
    w.sub = std::move(parts);
    return w;
  }

  std::size_t max_gen_index() const;
  std::string print(const std::vector<std::string>& names) const;
  bool operator==(const Word&) const = default;
};

// Evaluate a word over any group context providing identity/mul/pow and an
// environment of that group's elements.  Commutators expand as x⁻¹y⁻¹xy.
template <class Ctx, class E>
E eval_word(const Ctx& g, const Word& w, const std::vector<E>& env) {
  switch (w.kind) {
    case Word::Kind::Empty:
      return g.identity();
    case Word::Kind::Gen:
      if (w.gen >= env.size()) throw std::out_of_range("word: generator index out of range");
      return env[w.gen];
    case Word::Kind::Power:
      return g.pow(eval_word(g, w.sub[0], env), w.exp);
    case Word::Kind::Bracket: {
      E a = eval_word(g, w.sub[0], env);
      E b = eval_word(g, w.sub[1], env);
      return g.mul(g.mul(g.pow(a, -1), g.pow(b, -1)), g.mul(a, b));
    }
    case Word::Kind::Concat: {
      E r = g.identity();
      for (const auto& part : w.sub) r = g.mul(r, eval_word(g, part, env));
      return r;
    }
  }
  return g.identity();
}

}  // namespace nil2
