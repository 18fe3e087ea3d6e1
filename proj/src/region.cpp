// Copyright 2026 The hrcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hrcsim/region.hpp"

#include <algorithm>
#include <stdexcept>

namespace hrcsim {

Region::Region(std::vector<int> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  const auto last = std::unique(sites_.begin(), sites_.end());
  if (last != sites_.end()) {
    throw std::invalid_argument("Region: duplicate site");
  }
}

Region::Region(std::initializer_list<int> sites)
    : Region(std::vector<int>(sites)) {}

Region Region::contiguous(int first, int count, int n_sites) {
  if (n_sites <= 0 || count < 0 || count > n_sites) {
    throw std::invalid_argument("Region::contiguous: bad block size");
  }
  std::vector<int> sites;
  sites.reserve(count);
  for (int k = 0; k < count; ++k) {
    sites.push_back((first + k) % n_sites);
  }
  return Region(std::move(sites));
}

Region Region::complement(const Region& r, int n_sites) {
  r.validate(n_sites);
  std::vector<int> sites;
  sites.reserve(n_sites - r.size());
  for (int s = 0; s < n_sites; ++s) {
    if (!r.contains(s)) {
      sites.push_back(s);
    }
  }
  return Region(std::move(sites));
}

Region Region::join(const Region& a, const Region& b) {
  if (!a.disjoint_with(b)) {
    throw std::invalid_argument("Region::join: regions overlap");
  }
  std::vector<int> sites;
  sites.reserve(a.sites_.size() + b.sites_.size());
  sites.insert(sites.end(), a.sites_.begin(), a.sites_.end());
  sites.insert(sites.end(), b.sites_.begin(), b.sites_.end());
  return Region(std::move(sites));
}

bool Region::contains(int site) const {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

bool Region::disjoint_with(const Region& other) const {
  auto a = sites_.begin();
  auto b = other.sites_.begin();
  while (a != sites_.end() && b != other.sites_.end()) {
    if (*a == *b) {
      return false;
    }
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return true;
}

void Region::validate(int n_sites) const {
  for (const int s : sites_) {
    if (s < 0 || s >= n_sites) {
      throw std::invalid_argument("Region: site out of range");
    }
  }
}

Quadripartition Quadripartition::equal_blocks(int n_sites) {
  if (n_sites <= 0 || n_sites % 4 != 0) {
    throw std::invalid_argument(
        "Quadripartition: n_sites must be a positive multiple of 4");
  }
  const int quarter = n_sites / 4;
  return Quadripartition{
      Region::contiguous(0, quarter, n_sites),
      Region::contiguous(quarter, quarter, n_sites),
      Region::contiguous(2 * quarter, quarter, n_sites),
      Region::contiguous(3 * quarter, quarter, n_sites),
  };
}

}  // namespace hrcsim
