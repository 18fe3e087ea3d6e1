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

#pragma once

#include <initializer_list>
#include <vector>

namespace hrcsim {

/// A subset of sites, stored sorted and duplicate-free.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<int> sites);
  Region(std::initializer_list<int> sites);

  /// `count` consecutive sites starting at `first` on a ring of `n_sites`.
  static Region contiguous(int first, int count, int n_sites);

  static Region complement(const Region& r, int n_sites);

  /// Disjoint union. Throws if the regions overlap.
  static Region join(const Region& a, const Region& b);

  const std::vector<int>& sites() const { return sites_; }
  int size() const { return static_cast<int>(sites_.size()); }
  bool empty() const { return sites_.empty(); }
  bool contains(int site) const;
  bool disjoint_with(const Region& other) const;

  /// Throws unless all sites lie in [0, n_sites).
  void validate(int n_sites) const;

  bool operator==(const Region&) const = default;

 private:
  std::vector<int> sites_;
};

/// Four contiguous blocks A, B, C, D covering a ring of n sites, each of
/// length n/4, in ring order.
struct Quadripartition {
  Region a, b, c, d;

  static Quadripartition equal_blocks(int n_sites);
};

}  // namespace hrcsim
