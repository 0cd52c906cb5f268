#pragma once

#include <string>
#include <vector>

namespace folia {

// Permutation of {0, ..., n-1}, stored as the image table.
using Perm = std::vector<int>;

Perm identity_perm(int n);
bool is_permutation(const Perm& p);
Perm inverse_perm(const Perm& p);

// Left-to-right composition: (first * then)(i) = then[first[i]].
Perm compose(const Perm& first, const Perm& then);

// Cycles sorted by their smallest element; each cycle starts at its smallest element.
std::vector<std::vector<int>> cycles(const Perm& p);

// Orbit of 0 under the generators covers everything?
bool transitive(const std::vector<Perm>& gens, int n);

// Cycle notation, 1-based, e.g. "(1 2)(3)". Fixed points may be omitted in input.
Perm parse_cycles(const std::string& text, int n);
std::string format_cycles(const Perm& p);

}  // namespace folia
