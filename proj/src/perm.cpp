#include "folia/perm.hpp"

#include <algorithm>
#include <cctype>

#include "folia/errors.hpp"

namespace folia {

Perm identity_perm(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

bool is_permutation(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Perm inverse_perm(const Perm& p) {
  Perm q(p.size());
  for (int i = 0; i < static_cast<int>(p.size()); ++i) q[p[i]] = i;
  return q;
}

Perm compose(const Perm& first, const Perm& then) {
  Perm r(first.size());
  for (int i = 0; i < static_cast<int>(first.size()); ++i) r[i] = then[first[i]];
  return r;
}

std::vector<std::vector<int>> cycles(const Perm& p) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(p.size(), 0);
  for (int i = 0; i < static_cast<int>(p.size()); ++i) {
    if (seen[i]) continue;
    std::vector<int> c;
    int j = i;
    while (!seen[j]) {
      seen[j] = 1;
      c.push_back(j);
      j = p[j];
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool transitive(const std::vector<Perm>& gens, int n) {
  if (n <= 0) return false;
  std::vector<Perm> step = gens;
  for (const Perm& g : gens) step.push_back(inverse_perm(g));
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (const Perm& g : step) {
      int j = g[i];
      if (!seen[j]) {
        seen[j] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n;
}

Perm parse_cycles(const std::string& text, int n) {
  Perm p = identity_perm(n);
  std::vector<char> moved(n, 0);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation: " + text);
    ++i;
    std::vector<int> cyc;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start) throw ParseError("expected square id in cycle notation: " + text);
      int v = std::stoi(text.substr(start, i - start)) - 1;
      if (v < 0 || v >= n) throw ParseError("square id out of range in: " + text);
      if (moved[v]) throw ParseError("square id repeated in cycle notation: " + text);
      moved[v] = 1;
      cyc.push_back(v);
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;
    }
    for (size_t k = 0; k < cyc.size(); ++k) p[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip_ws();
  }
  return p;
}

std::string format_cycles(const Perm& p) {
  std::string out;
  for (const auto& c : cycles(p)) {
    out += '(';
    for (size_t k = 0; k < c.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(c[k] + 1);
    }
    out += ')';
  }
  return out;
}

}  // namespace folia
