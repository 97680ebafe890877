#include "csp/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace csp {

namespace {

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == -l)
    out.pop_back();
  else
    out.push_back(l);
}

// length first, then generator index with +i before -i
int letter_rank(Letter l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

}  // namespace

Word Word::reduce(std::span<const Letter> raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) throw std::invalid_argument("letter 0 is not a generator");
    push_reduced(out, l);
  }
  return Word(std::move(out));
}

Word Word::reduce(std::initializer_list<Letter> raw) {
  return reduce(std::span<const Letter>(raw.begin(), raw.size()));
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters_;
  for (Letter l : b.letters_) push_reduced(out, l);
  return Word(std::move(out));
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(-*it);
  return Word(std::move(out));
}

Word Word::pow(int e) const {
  Word base = e < 0 ? inverse() : *this;
  Word r;
  for (int k = 0; k < std::abs(e); ++k) r = r * base;
  return r;
}

Word Word::conjugated_by(const Word& w) const { return w * *this * w.inverse(); }

uint32_t Word::max_index() const {
  uint32_t m = 0;
  for (Letter l : letters_) m = std::max<uint32_t>(m, std::abs(l));
  return m;
}

std::pair<Word, Word> Word::cyclic_split() const {
  std::vector<Letter> pre;
  size_t lo = 0, hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
    pre.push_back(letters_[lo]);
    ++lo;
    --hi;
  }
  Word core(std::vector<Letter>(letters_.begin() + lo, letters_.begin() + hi));
  return {Word(std::move(pre)), core};
}

bool Word::shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int ra = letter_rank(a[i]), rb = letter_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

ClassMarkedFreeGroup ClassMarkedFreeGroup::punctured_sphere(uint32_t punctures) {
  if (punctures < 3) throw std::invalid_argument("need at least 3 punctures");
  ClassMarkedFreeGroup g;
  g.rank = punctures - 1;
  for (uint32_t i = 1; i <= g.rank; ++i) g.marked.push_back(i);
  g.peripheral = g.rank;
  return g;
}

ClassMarkedFreeGroup ClassMarkedFreeGroup::all_marked(uint32_t rank) {
  ClassMarkedFreeGroup g;
  g.rank = rank;
  for (uint32_t i = 1; i <= rank; ++i) g.marked.push_back(i);
  return g;
}

void ClassMarkedFreeGroup::validate() const {
  if (rank == 0) throw std::invalid_argument("rank must be positive");
  std::vector<bool> seen(rank + 1, false);
  for (uint32_t m : marked) {
    if (m == 0 || m > rank || seen[m]) throw std::invalid_argument("bad marked index");
    seen[m] = true;
  }
  if (peripheral) {
    if (*peripheral == 0 || *peripheral > rank || !seen[*peripheral])
      throw std::invalid_argument("peripheral index must be a marked generator");
  }
}

ClassMarkedFreeGroup ClassMarkedFreeGroup::erased() const {
  if (!peripheral) throw std::logic_error("no peripheral generator to erase");
  ClassMarkedFreeGroup g;
  g.rank = rank - 1;
  for (uint32_t m : marked) {
    if (m == *peripheral) continue;
    g.marked.push_back(m > *peripheral ? m - 1 : m);
  }
  std::sort(g.marked.begin(), g.marked.end());
  return g;
}

Word parse_word(const std::string& text, const ClassMarkedFreeGroup& g) {
  std::istringstream is(text);
  std::string tok;
  std::vector<Letter> raw;
  while (is >> tok) {
    int exp = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      exp = std::stoi(tok.substr(caret + 1));
      tok = tok.substr(0, caret);
    }
    uint32_t idx;
    if (tok == "L") {
      if (!g.peripheral) throw std::invalid_argument("'L' used but no peripheral generator");
      idx = *g.peripheral;
    } else if (tok.size() >= 2 && tok[0] == 'g') {
      idx = static_cast<uint32_t>(std::stoul(tok.substr(1)));
    } else {
      throw std::invalid_argument("bad word token: " + tok);
    }
    if (idx == 0 || idx > g.rank) throw std::invalid_argument("generator index out of range: " + tok);
    Letter l = static_cast<Letter>(idx);
    for (int k = 0; k < std::abs(exp); ++k) raw.push_back(exp < 0 ? -l : l);
  }
  return Word::reduce(raw);
}

std::string format_word(const Word& w, const ClassMarkedFreeGroup& g) {
  if (w.empty()) return "1";
  std::ostringstream os;
  const auto& ls = w.letters();
  for (size_t i = 0; i < ls.size();) {
    uint32_t idx = std::abs(ls[i]);
    int exp = 0;
    size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) {
      exp += ls[i] > 0 ? 1 : -1;
      ++j;
    }
    if (i) os << ' ';
    if (g.peripheral && idx == *g.peripheral)
      os << 'L';
    else
      os << 'g' << idx;
    if (exp != 1) os << '^' << exp;
    i = j;
  }
  return os.str();
}

std::optional<Word> conjugator(const Word& u, const Word& v) {
  auto [c, uc] = u.cyclic_split();
  auto [d, vc] = v.cyclic_split();
  if (uc.size() != vc.size()) return std::nullopt;
  if (uc.empty()) {
    // cyclically reduced and empty means both are the identity
    return (u == v) ? std::optional<Word>(Word()) : std::nullopt;
  }
  const auto& a = uc.letters();
  for (size_t k = 0; k < a.size(); ++k) {
    // rotation: uc = s t  ->  t s, with |s| = k
    bool match = true;
    for (size_t i = 0; i < a.size() && match; ++i)
      match = (vc[i] == a[(k + i) % a.size()]);
    if (match) {
      Word s(Word::reduce(std::span<const Letter>(a.data(), k)));
      return d * s.inverse() * c.inverse();
    }
  }
  return std::nullopt;
}

Word erase_peripheral(const Word& w, const ClassMarkedFreeGroup& g) {
  if (!g.peripheral) throw std::logic_error("group has no peripheral generator");
  uint32_t p = *g.peripheral;
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    uint32_t idx = std::abs(l);
    if (idx == p) continue;
    Letter m = static_cast<Letter>(idx > p ? idx - 1 : idx);
    push_reduced(out, l < 0 ? -m : m);
  }
  return Word::reduce(out);
}

FreeAut FreeAut::identity(const ClassMarkedFreeGroup& g) {
  std::vector<Word> ims;
  for (uint32_t i = 1; i <= g.rank; ++i) ims.push_back(Word::generator(i));
  return FreeAut(g, ims, ims);
}

FreeAut FreeAut::inner(const ClassMarkedFreeGroup& g, const Word& w) {
  if (!g.in_range(w)) throw std::invalid_argument("word out of range");
  std::vector<Word> fwd, inv;
  Word wi = w.inverse();
  for (uint32_t i = 1; i <= g.rank; ++i) {
    fwd.push_back(Word::generator(i).conjugated_by(w));
    inv.push_back(Word::generator(i).conjugated_by(wi));
  }
  return FreeAut(g, std::move(fwd), std::move(inv));
}

FreeAut FreeAut::from_images(const ClassMarkedFreeGroup& g, std::vector<Word> fwd,
                             std::vector<Word> inv) {
  if (fwd.size() != g.rank || inv.size() != g.rank)
    throw std::invalid_argument("need one image per generator");
  FreeAut a(g, std::move(fwd), std::move(inv));
  for (uint32_t i = 1; i <= g.rank; ++i) {
    if (a.apply(a.inv_[i - 1]) != Word::generator(i) ||
        a.apply_inverse(a.fwd_[i - 1]) != Word::generator(i))
      throw std::invalid_argument("images do not define an automorphism");
  }
  return a;
}

FreeAut FreeAut::half_twist(const ClassMarkedFreeGroup& g, uint32_t k) {
  if (k == 0 || k + 1 > g.rank) throw std::invalid_argument("half twist out of range");
  std::vector<Word> fwd, inv;
  for (uint32_t i = 1; i <= g.rank; ++i) {
    Letter a = static_cast<Letter>(k), b = static_cast<Letter>(k + 1);
    if (i == k) {
      fwd.push_back(Word::reduce({a, b, -a}));
      inv.push_back(Word::reduce({b}));
    } else if (i == k + 1) {
      fwd.push_back(Word::reduce({a}));
      inv.push_back(Word::reduce({-b, a, b}));
    } else {
      fwd.push_back(Word::generator(i));
      inv.push_back(Word::generator(i));
    }
  }
  return FreeAut(g, std::move(fwd), std::move(inv));
}

Word FreeAut::apply(const Word& w) const {
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    const Word& img = fwd_[std::abs(l) - 1];
    if (l > 0)
      for (Letter m : img.letters()) push_reduced(out, m);
    else
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it)
        push_reduced(out, -*it);
  }
  return Word(std::move(out));
}

Word FreeAut::apply_inverse(const Word& w) const {
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    const Word& img = inv_[std::abs(l) - 1];
    if (l > 0)
      for (Letter m : img.letters()) push_reduced(out, m);
    else
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it)
        push_reduced(out, -*it);
  }
  return Word(std::move(out));
}

FreeAut operator*(const FreeAut& s, const FreeAut& t) {
  if (s.domain_.rank != t.domain_.rank) throw std::invalid_argument("rank mismatch");
  std::vector<Word> fwd, inv;
  for (uint32_t i = 0; i < s.domain_.rank; ++i) {
    fwd.push_back(s.apply(t.fwd_[i]));
    inv.push_back(t.apply_inverse(s.inv_[i]));
  }
  return FreeAut(s.domain_, std::move(fwd), std::move(inv));
}

FreeAut FreeAut::inverse() const { return FreeAut(domain_, inv_, fwd_); }

FreeAut FreeAut::pow(int e) const {
  FreeAut base = e < 0 ? inverse() : *this;
  FreeAut r = identity(domain_);
  for (int k = 0; k < std::abs(e); ++k) r = r * base;
  return r;
}

bool FreeAut::is_identity() const {
  for (uint32_t i = 1; i <= domain_.rank; ++i)
    if (fwd_[i - 1] != Word::generator(i)) return false;
  return true;
}

bool FreeAut::class_preserving() const {
  for (uint32_t m : domain_.marked)
    if (!conjugate_test(Word::generator(m), fwd_[m - 1])) return false;
  return true;
}

FreeAut artin_twist(const ClassMarkedFreeGroup& g, uint32_t i, uint32_t j) {
  if (i == 0 || i >= j || j > g.rank) throw std::invalid_argument("artin indices out of range");
  FreeAut a = FreeAut::half_twist(g, i) * FreeAut::half_twist(g, i);
  for (uint32_t k = i + 1; k < j; ++k) {
    FreeAut s = FreeAut::half_twist(g, k);
    a = s * a * s.inverse();
  }
  if (!a.class_preserving()) throw std::logic_error("artin twist failed class preservation");
  return a;
}

FreeAut normalize_fixing_peripheral(const FreeAut& t) {
  const auto& g = t.domain();
  if (!g.peripheral) throw std::logic_error("domain has no peripheral generator");
  Word lam = Word::generator(*g.peripheral);
  auto w = conjugator(lam, t.apply(lam));
  if (!w) throw std::invalid_argument("automorphism does not preserve the peripheral class");
  // w is unique up to right multiplication by powers of the peripheral
  // generator; pick the shortlex-least representative so sections are
  // reproducible.
  Word best = *w;
  int span = 2 * static_cast<int>(w->size()) + 1;
  for (int k = -span; k <= span; ++k) {
    Word cand = *w * lam.pow(k);
    if (Word::shortlex_less(cand, best)) best = cand;
  }
  return FreeAut::inner(g, best.inverse()) * t;
}

FreeAut point_push(const ClassMarkedFreeGroup& g, uint32_t j) {
  if (!g.peripheral) throw std::logic_error("point push needs a peripheral generator");
  uint32_t m = *g.peripheral;
  if (j == 0 || j >= m || m != g.rank)
    throw std::invalid_argument("point push index out of range");
  Letter lj = static_cast<Letter>(j), lm = static_cast<Letter>(m);
  Word lam = Word::generator(m);
  Word conj = Word::reduce({-lm, lj, lm});  // image of gamma_j
  std::vector<Word> fwd(g.rank), inv(g.rank);
  for (uint32_t k = 1; k <= g.rank; ++k) {
    Letter lk = static_cast<Letter>(k);
    if (k == m) {
      fwd[k - 1] = lam;
      inv[k - 1] = lam;
    } else if (k == j) {
      fwd[k - 1] = conj;
      inv[k - 1] = Word::reduce({lm, lj, -lm});
    } else if (k < j) {
      fwd[k - 1] = Word::generator(k).conjugated_by(conj);
      inv[k - 1] = Word::reduce({-lj, lk, lj});
    } else {
      fwd[k - 1] = Word::reduce({lj, lk, -lj});
      inv[k - 1] = Word::reduce({lm, -lj, -lm, lk, lm, lj, -lm});
    }
  }
  FreeAut r = FreeAut::from_images(g, std::move(fwd), std::move(inv));
  // pinned convention: erasing the peripheral generator from the images must
  // give conjugation by gamma_j, which is what the downstream finite-level
  // identity checks rely on
  for (uint32_t k = 1; k < m; ++k) {
    Word got = erase_peripheral(r.apply(Word::generator(k)), g);
    Word want = Word::generator(k).conjugated_by(Word::generator(j));
    if (got != want) throw std::logic_error("point push convention check failed");
  }
  return r;
}

FreeAut point_push_word(const ClassMarkedFreeGroup& g, const Word& w) {
  FreeAut r = FreeAut::identity(g);
  for (Letter l : w.letters()) {
    FreeAut p = point_push(g, std::abs(l));
    r = r * (l > 0 ? p : p.inverse());
  }
  return r;
}

}  // namespace csp
