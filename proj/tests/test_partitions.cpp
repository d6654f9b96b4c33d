#include <algorithm>
#include <cstdint>
#include <set>

#include "doctest.h"
#include "partitions.hpp"

using namespace impdiff;

namespace {

// Independent counting oracles. Super-Catalan recurrence
// (k+1) a(k) = (6k-3) a(k-1) - (k-2) a(k-2), a(0) = a(1) = 1; the partition
// count for the polygon 0..n is a(n-1).
uint64_t schroder_oracle(int n) {
  std::vector<uint64_t> a = {1, 1};
  for (int k = 2; k < n; ++k)
    a.push_back(((6 * k - 3) * a[k - 1] - (k - 2) * a[k - 2]) / (k + 1));
  return a[n - 1];
}

// C(n-1) = (1/n) * binom(2n-2, n-1).
uint64_t catalan_oracle(int n) {
  uint64_t c = 1;
  for (int k = 1; k < n; ++k) c = c * (n - 1 + k) / k;  // binom(2n-2, n-1)
  return c / n;
}

std::vector<Partition> collect(int n, bool triangulations = false) {
  PartitionEnumerator en(n, triangulations);
  std::vector<Partition> out;
  while (auto p = en.next()) out.push_back(*p);
  return out;
}

}  // namespace

TEST_CASE("partition counts match the recurrence oracle") {
  const uint64_t expected[] = {1, 3, 11, 45, 197, 903, 4279};
  for (int n = 2; n <= 8; ++n) {
    CHECK(schroder_oracle(n) == expected[n - 2]);
    CHECK(count_partitions(n) == expected[n - 2]);
  }
}

TEST_CASE("triangulation counts match the Catalan formula") {
  const uint64_t expected[] = {1, 2, 5, 14, 42, 132, 429, 1430};
  for (int n = 2; n <= 9; ++n) {
    CHECK(catalan_oracle(n) == expected[n - 2]);
    CHECK(count_partitions(n, true) == expected[n - 2]);
  }
}

TEST_CASE("small polygons enumerate the expected face sets") {
  auto p2 = collect(2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].faces == std::vector<Face>{{0, 1, 2}});

  auto p3 = collect(3);
  REQUIRE(p3.size() == 3);
  std::set<std::vector<Face>> seen;
  for (const auto& p : p3) seen.insert(p.faces);
  CHECK(seen.count({{0, 1, 2, 3}}) == 1);
  CHECK(seen.count({{0, 1, 2}, {0, 2, 3}}) == 1);
  CHECK(seen.count({{0, 1, 3}, {1, 2, 3}}) == 1);

  auto t3 = collect(3, true);
  REQUIRE(t3.size() == 2);
  CHECK(t3[0].faces == std::vector<Face>{{0, 1, 2}, {0, 2, 3}});
  CHECK(t3[1].faces == std::vector<Face>{{0, 1, 3}, {1, 2, 3}});
}

TEST_CASE("stream order is lexicographic on the sorted face list") {
  for (int n = 2; n <= 7; ++n) {
    auto all = collect(n);
    for (const auto& p : all)
      CHECK(std::is_sorted(p.faces.begin(), p.faces.end()));
    for (size_t i = 1; i < all.size(); ++i)
      CHECK(all[i - 1].faces < all[i].faces);
  }
}

TEST_CASE("two enumerations yield identical sequences") {
  for (int n : {4, 6}) {
    auto a = collect(n);
    auto b = collect(n);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].faces == b[i].faces);
  }
}

TEST_CASE("every enumerated partition is a valid non-crossing tiling") {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& p : collect(n)) CHECK_NOTHROW(validate_partition(p));
    for (const auto& p : collect(n, true)) {
      CHECK_NOTHROW(validate_partition(p));
      for (const Face& f : p.faces) CHECK(f.size() == 3);
    }
  }
}

TEST_CASE("triangulations are exactly the all-triangle partitions") {
  for (int n = 2; n <= 7; ++n) {
    std::set<std::vector<Face>> filtered;
    for (const auto& p : collect(n)) {
      bool all_triangles = true;
      for (const Face& f : p.faces) all_triangles &= f.size() == 3;
      if (all_triangles) filtered.insert(p.faces);
    }
    std::set<std::vector<Face>> streamed;
    for (const auto& p : collect(n, true)) streamed.insert(p.faces);
    CHECK(filtered == streamed);
  }
}

TEST_CASE("reconstruction from the face containing edge (0, n)") {
  // Every partition decomposes as the inner face on edge (0, n) plus
  // independent partitions of the gap polygons of that face.
  for (int n = 3; n <= 6; ++n) {
    for (const auto& p : collect(n)) {
      const Face* inner = nullptr;
      for (const Face& f : p.faces)
        if (f.front() == 0 && f.back() == n) {
          // The face containing the closing edge (0, n) is unique.
          CHECK(inner == nullptr);
          inner = &f;
        }
      REQUIRE(inner != nullptr);
      auto decomposition = decompose(*inner, n);
      // Remaining faces split cleanly into the gap ranges of the inner face.
      std::vector<Face> rest;
      for (const Face& f : p.faces)
        if (&f != inner) rest.push_back(f);
      size_t assigned = 0;
      for (const Face& gap : decomposition.outer) {
        int lo = gap.front(), hi = gap.back();
        int triangle_equivalents = 0;
        for (const Face& f : rest)
          if (lo <= f.front() && f.back() <= hi) {
            triangle_equivalents += static_cast<int>(f.size()) - 2;
            ++assigned;
          }
        CHECK(triangle_equivalents == hi - lo - 1);
      }
      CHECK(assigned == rest.size());
    }
  }
}

TEST_CASE("decompose splits inner sequences into gap faces") {
  // (0,1,2,4,5,7) on the octagon leaves the two gap faces (2,3,4) and (5,6,7).
  auto d = decompose({0, 1, 2, 4, 5, 7}, 7);
  REQUIRE(d.outer.size() == 2);
  CHECK(d.outer[0] == Face{2, 3, 4});
  CHECK(d.outer[1] == Face{5, 6, 7});

  auto whole = decompose({0, 4}, 4);
  REQUIRE(whole.outer.size() == 1);
  CHECK(whole.outer[0] == Face{0, 1, 2, 3, 4});

  auto none = decompose({0, 1, 2, 3}, 3);
  CHECK(none.outer.empty());

  CHECK_THROWS_AS(decompose({0, 2, 1, 3}, 3), Error);
  CHECK_THROWS_AS(decompose({1, 3}, 3), Error);
}

TEST_CASE("edge sets") {
  Partition triangle{2, {{0, 1, 2}}};
  CHECK(edges(triangle) ==
        std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}});

  Partition split{3, {{0, 1, 2}, {0, 2, 3}}};
  CHECK(edges(split) ==
        std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 3}});

  Partition quad{3, {{0, 1, 2, 3}}};
  CHECK(edges(quad) ==
        std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(PartitionEnumerator(1), Error);
  CHECK_THROWS_AS(count_partitions(0), Error);
}

TEST_CASE("streaming starts immediately for large polygons") {
  PartitionEnumerator en(12);
  int first = 0;
  while (first < 5 && en.next()) ++first;
  CHECK(first == 5);
}
