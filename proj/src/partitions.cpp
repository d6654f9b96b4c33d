#include "partitions.hpp"

#include <algorithm>
#include <map>

namespace impdiff {

std::set<std::pair<int, int>> edges(const Partition& p) {
  std::set<std::pair<int, int>> result;
  for (const Face& f : p.faces) {
    for (size_t i = 0; i + 1 < f.size(); ++i) result.emplace(f[i], f[i + 1]);
    result.emplace(f.front(), f.back());
  }
  return result;
}

InnerOuterDecomposition decompose(const Face& inner, int n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "polygon order must be at least 2");
  if (inner.size() < 2) fail(ErrorCode::InvalidArgument, "inner sequence needs k >= 1");
  if (inner.front() != 0 || inner.back() != n)
    fail(ErrorCode::InvalidArgument, "inner sequence must run from 0 to n");
  for (size_t i = 1; i < inner.size(); ++i)
    if (inner[i] <= inner[i - 1])
      fail(ErrorCode::InvalidArgument, "inner sequence must be strictly increasing");

  InnerOuterDecomposition d;
  d.inner = inner;
  for (size_t i = 0; i + 1 < inner.size(); ++i) {
    if (inner[i + 1] - inner[i] >= 2) {
      Face gap;
      for (int v = inner[i]; v <= inner[i + 1]; ++v) gap.push_back(v);
      d.outer.push_back(std::move(gap));
    }
  }
  return d;
}

void validate_partition(const Partition& p) {
  if (p.n < 2) fail(ErrorCode::InvalidArgument, "polygon order must be at least 2");
  if (p.faces.empty()) fail(ErrorCode::InvalidArgument, "partition has no faces");

  int triangle_equivalents = 0;
  std::map<std::pair<int, int>, int> edge_count;
  for (const Face& f : p.faces) {
    if (f.size() < 3) fail(ErrorCode::InvalidArgument, "face with fewer than 3 vertices");
    for (size_t i = 0; i < f.size(); ++i) {
      if (f[i] < 0 || f[i] > p.n) fail(ErrorCode::InvalidArgument, "face vertex out of range");
      if (i > 0 && f[i] <= f[i - 1])
        fail(ErrorCode::InvalidArgument, "face vertices must be strictly increasing");
    }
    triangle_equivalents += static_cast<int>(f.size()) - 2;
    for (size_t i = 0; i + 1 < f.size(); ++i) ++edge_count[{f[i], f[i + 1]}];
    ++edge_count[{f.front(), f.back()}];
  }
  if (triangle_equivalents != p.n - 1)
    fail(ErrorCode::InvalidArgument, "faces do not tile the polygon");

  std::vector<std::pair<int, int>> inner_edges;
  for (const auto& [e, count] : edge_count) {
    bool boundary = (e.second == e.first + 1) || (e.first == 0 && e.second == p.n);
    if (boundary) {
      if (count != 1) fail(ErrorCode::InvalidArgument, "boundary edge not covered exactly once");
    } else {
      if (count != 2) fail(ErrorCode::InvalidArgument, "inner edge not shared by two faces");
      inner_edges.push_back(e);
    }
  }
  // All n+1 boundary edges must appear.
  int boundary_seen = 0;
  for (const auto& [e, count] : edge_count) {
    (void)count;
    if (e.second == e.first + 1 || (e.first == 0 && e.second == p.n)) ++boundary_seen;
  }
  if (boundary_seen != p.n + 1)
    fail(ErrorCode::InvalidArgument, "missing boundary edges");
  if (static_cast<int>(inner_edges.size()) != static_cast<int>(p.faces.size()) - 1)
    fail(ErrorCode::InvalidArgument, "inner edge count must be face count minus one");
  for (size_t i = 0; i < inner_edges.size(); ++i)
    for (size_t j = i + 1; j < inner_edges.size(); ++j) {
      auto [a, b] = inner_edges[i];
      auto [c, d] = inner_edges[j];
      if ((a < c && c < b && b < d) || (c < a && a < d && d < b))
        fail(ErrorCode::InvalidArgument, "crossing inner edges");
    }
}

PartitionEnumerator::PartitionEnumerator(int n, bool triangulations_only)
    : n_(n), triangulations_only_(triangulations_only) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "polygon order must be at least 2");
}

bool PartitionEnumerator::advance_subset(Frame& f) {
  int m = static_cast<int>(f.active.size()) - 1;
  if (f.fresh) {
    f.fresh = false;
    f.subset = {2};
    return true;
  }
  if (triangulations_only_) {
    if (f.subset[0] < m) {
      ++f.subset[0];
      return true;
    }
    return false;
  }
  if (f.subset.back() < m) {
    f.subset.push_back(f.subset.back() + 1);
    return true;
  }
  f.subset.pop_back();
  if (f.subset.empty()) return false;
  ++f.subset.back();
  return true;
}

Face PartitionEnumerator::face_of(const Frame& f) const {
  Face face;
  face.reserve(f.subset.size() + 2);
  face.push_back(f.active[0]);
  face.push_back(f.active[1]);
  for (int idx : f.subset) face.push_back(f.active[idx]);
  return face;
}

std::vector<PartitionEnumerator::Region> PartitionEnumerator::split(const Frame& f) const {
  std::vector<Region> subs;
  std::vector<int> j;
  j.reserve(f.subset.size() + 2);
  j.push_back(0);
  j.push_back(1);
  j.insert(j.end(), f.subset.begin(), f.subset.end());
  int m = static_cast<int>(f.active.size()) - 1;
  for (size_t t = 0; t + 1 < j.size(); ++t) {
    if (j[t + 1] - j[t] >= 2)
      subs.emplace_back(f.active.begin() + j[t], f.active.begin() + j[t + 1] + 1);
  }
  if (j.back() < m) {
    Region wrap;
    wrap.push_back(f.active[0]);
    wrap.insert(wrap.end(), f.active.begin() + j.back(), f.active.end());
    subs.push_back(std::move(wrap));
  }
  return subs;
}

std::optional<Partition> PartitionEnumerator::next() {
  if (!started_) {
    started_ = true;
    Frame root;
    root.active.resize(n_ + 1);
    for (int v = 0; v <= n_; ++v) root.active[v] = v;
    stack_.push_back(std::move(root));
  }

  while (!stack_.empty()) {
    size_t depth = stack_.size() - 1;
    Frame& f = stack_.back();
    if (!advance_subset(f)) {
      stack_.pop_back();
      faces_.resize(stack_.size());
      continue;
    }

    faces_.resize(depth);
    faces_.push_back(face_of(f));

    std::vector<Region> open_next = f.open;
    for (auto& sub : split(f)) open_next.push_back(std::move(sub));

    if (open_next.empty()) return Partition{n_, faces_};

    // Descend into the open region with the smallest boundary edge; faces of
    // every other open region compare lexicographically larger.
    size_t best = 0;
    for (size_t i = 1; i < open_next.size(); ++i)
      if (open_next[i] < open_next[best]) best = i;
    Frame child;
    child.active = std::move(open_next[best]);
    open_next.erase(open_next.begin() + best);
    child.open = std::move(open_next);
    stack_.push_back(std::move(child));
  }
  return std::nullopt;
}

uint64_t count_partitions(int n, bool triangulations_only) {
  PartitionEnumerator en(n, triangulations_only);
  uint64_t count = 0;
  while (en.next()) ++count;
  return count;
}

}  // namespace impdiff
