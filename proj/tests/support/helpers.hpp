/*
 * Copyright 2026 The dioph Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DIOPH_TESTS_HELPERS_HPP_
#define DIOPH_TESTS_HELPERS_HPP_

#include <set>
#include <vector>

#include "dioph/oracle.hpp"
#include "support/naive_oracle.hpp"

namespace testing_util {

// A library DefinableSet over Z/n in the naive oracle's representation.
inline std::set<naive::Point> as_points(const dioph::DefinableSet& s) {
  std::set<naive::Point> out;
  for (const auto& t : s.tuples) {
    naive::Point p;
    for (auto e : t) p.push_back(e.code);
    out.insert(p);
  }
  return out;
}

inline dioph::Tuple tuple(std::initializer_list<long long> xs) {
  dioph::Tuple t;
  for (long long x : xs) t.push_back(dioph::Element{x});
  return t;
}

}  // namespace testing_util

#endif  // DIOPH_TESTS_HELPERS_HPP_
