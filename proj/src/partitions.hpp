#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace impdiff {

// A face of a polygon partition: strictly increasing vertex labels, length >= 3.
using Face = std::vector<int>;

// Partition of the convex polygon with vertices 0..n by non-crossing
// diagonals, described by its face set. Faces are kept sorted
// lexicographically.
struct Partition {
  int n = 0;
  std::vector<Face> faces;
};

// Every edge of the partition (boundary and inner), each reported once as an
// ordered (low, high) pair.
std::set<std::pair<int, int>> edges(const Partition& p);

struct InnerOuterDecomposition {
  Face inner;                // 0 = i_0 < ... < i_k = n
  std::vector<Face> outer;   // (i_j, i_j+1, ..., i_{j+1}) for every gap >= 2
};

InnerOuterDecomposition decompose(const Face& inner, int n);

// Throws if p is not a valid partition (tiling, non-crossing, counts).
void validate_partition(const Partition& p);

// Streaming enumeration of all partitions (or only triangulations) of the
// polygon 0..n, emitted in lexicographic order of the sorted face list.
// Each step resolves the open region with the smallest boundary edge by
// choosing the face attached to that edge; sub-regions are enumerated
// recursively, so no global materialization happens.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(int n, bool triangulations_only = false);

  std::optional<Partition> next();

 private:
  using Region = std::vector<int>;  // vertex labels, sorted = convex cyclic order

  struct Frame {
    std::vector<Region> open;  // open regions other than the active one
    Region active;             // region whose minimal edge gets its face next
    std::vector<int> subset;   // indices (>= 2) into active chosen for the face
    bool fresh = true;
  };

  bool advance_subset(Frame& f);
  Face face_of(const Frame& f) const;
  std::vector<Region> split(const Frame& f) const;

  int n_;
  bool triangulations_only_;
  bool started_ = false;
  std::vector<Frame> stack_;
  std::vector<Face> faces_;
};

uint64_t count_partitions(int n, bool triangulations_only = false);

}  // namespace impdiff
