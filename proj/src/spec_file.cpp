#include "csp/spec_file.hpp"

#include <algorithm>
#include <sstream>

namespace csp {

SpecFile SpecFile::parse(const std::string& text) {
  SpecFile sf;
  std::istringstream is(text);
  std::string line;
  bool saw_version = false;
  std::vector<std::pair<uint32_t, std::string>> images;  // generator index -> expr
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (!saw_version) {
      std::string ver;
      ls >> ver;
      if (key != "csp-spec" || ver != "1")
        throw SpecParseError("unknown spec version: " + line);
      saw_version = true;
      continue;
    }
    if (key == "n") {
      if (!(ls >> sf.punctures)) throw SpecParseError("bad n line");
    } else if (key == "ell") {
      if (!(ls >> sf.ell)) throw SpecParseError("bad ell line");
    } else if (key == "perm") {
      std::string name;
      ls >> name;
      std::string rest;
      std::getline(ls, rest);
      size_t p = rest.find_first_not_of(" \t");
      if (name.empty() || p == std::string::npos) throw SpecParseError("bad perm line");
      sf.perms.emplace_back(name, rest.substr(p));
    } else if (key == "image") {
      std::string gen;
      ls >> gen;
      if (gen.size() < 2 || gen[0] != 'g') throw SpecParseError("bad image generator: " + gen);
      uint32_t idx = static_cast<uint32_t>(std::stoul(gen.substr(1)));
      std::string rest;
      std::getline(ls, rest);
      size_t p = rest.find_first_not_of(" \t");
      if (idx == 0 || p == std::string::npos) throw SpecParseError("bad image line");
      images.emplace_back(idx, rest.substr(p));
    } else if (key == "option") {
      std::string opt;
      ls >> opt;
      if (opt == "cap") {
        if (!(ls >> sf.cap)) throw SpecParseError("bad cap option");
      } else if (opt == "orbit-cap") {
        if (!(ls >> sf.orbit_cap)) throw SpecParseError("bad orbit-cap option");
      } else if (opt == "seed") {
        if (!(ls >> sf.seed)) throw SpecParseError("bad seed option");
      } else if (opt == "aut-gens") {
        if (!(ls >> sf.aut_tag)) throw SpecParseError("bad aut-gens option");
      } else {
        throw SpecParseError("unknown option: " + opt);
      }
    } else {
      throw SpecParseError("unknown spec key: " + key);
    }
  }
  if (!saw_version) throw SpecParseError("missing version line");
  if (sf.punctures < 4) throw SpecParseError("puncture count must be at least 4");
  if (sf.aut_tag != kAutGenTag) throw SpecParseError("unknown aut-gens tag: " + sf.aut_tag);
  uint32_t rank = sf.punctures - 2;
  sf.image_exprs.assign(rank, "");
  std::vector<bool> seen(rank, false);
  for (auto& [idx, expr] : images) {
    if (idx > rank) throw SpecParseError("image generator index out of range");
    if (seen[idx - 1]) throw SpecParseError("duplicate image line");
    seen[idx - 1] = true;
    sf.image_exprs[idx - 1] = expr;
  }
  for (uint32_t i = 0; i < rank; ++i)
    if (!seen[i]) throw SpecParseError("missing image for generator g" + std::to_string(i + 1));
  if (sf.perms.empty()) throw SpecParseError("no target group generators");
  return sf;
}

std::string SpecFile::canonical() const {
  std::ostringstream os;
  os << "csp-spec 1\n";
  os << "n " << punctures << '\n';
  os << "ell " << ell << '\n';
  for (const auto& [name, cycles] : perms) os << "perm " << name << ' ' << cycles << '\n';
  for (size_t i = 0; i < image_exprs.size(); ++i)
    os << "image g" << (i + 1) << ' ' << image_exprs[i] << '\n';
  os << "option cap " << cap << '\n';
  os << "option orbit-cap " << orbit_cap << '\n';
  os << "option seed " << seed << '\n';
  os << "option aut-gens " << aut_tag << '\n';
  return os.str();
}

QuotientSpec SpecFile::to_quotient_spec() const {
  // degree: the largest point named by any generator
  uint32_t degree = 1;
  std::vector<std::pair<std::string, Perm>> named;
  for (const auto& [name, cycles] : perms) {
    Perm p = Perm::parse_cycles(cycles);
    degree = std::max(degree, p.degree());
    named.emplace_back(name, std::move(p));
  }
  for (auto& [name, p] : named)
    if (p.degree() < degree) {
      // pad to the common degree
      std::vector<uint32_t> m(degree);
      for (uint32_t i = 0; i < degree; ++i) m[i] = i < p.degree() ? p[i] : i;
      p = Perm(std::move(m));
    }
  auto eval_expr = [&](const std::string& expr) {
    Perm r = Perm::identity(degree);
    std::istringstream es(expr);
    std::string tok;
    while (es >> tok) {
      int exp = 1;
      if (auto caret = tok.find('^'); caret != std::string::npos) {
        exp = std::stoi(tok.substr(caret + 1));
        tok = tok.substr(0, caret);
      }
      auto it = std::find_if(named.begin(), named.end(),
                             [&](const auto& np) { return np.first == tok; });
      if (it == named.end()) throw SpecParseError("unknown permutation name: " + tok);
      Perm base = exp < 0 ? it->second.inverse() : it->second;
      for (int k = 0; k < std::abs(exp); ++k) r = r * base;
    }
    return r;
  };
  QuotientSpec qs;
  qs.punctures = punctures;
  qs.ell = ell;
  qs.limits.cap = cap;
  qs.limits.orbit_cap = orbit_cap;
  qs.seed = seed;
  std::vector<Perm> images;
  for (const auto& expr : image_exprs) images.push_back(eval_expr(expr));
  qs.base = FreeHom::by_images(ClassMarkedFreeGroup::all_marked(punctures - 2),
                               std::move(images), cap);
  return qs;
}

}  // namespace csp
