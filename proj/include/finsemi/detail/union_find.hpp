#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "finsemi/error.hpp"

namespace finsemi::detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), Element{0});
  }

  Element find(Element x) {
    Element root = x;
    while (parent_[root] != root) {
      root = parent_[root];
    }
    while (parent_[x] != root) {
      Element next = parent_[x];
      parent_[x]   = root;
      x            = next;
    }
    return root;
  }

  // Returns false if x and y were already in one class.
  bool unite(Element x, Element y) {
    x = find(x);
    y = find(y);
    if (x == y) {
      return false;
    }
    if (size_[x] < size_[y]) {
      std::swap(x, y);
    }
    parent_[y] = x;
    size_[x] += size_[y];
    return true;
  }

  std::size_t size() const noexcept { return parent_.size(); }

  // Block labels numbered by least member.
  std::vector<Element> labels() {
    std::vector<Element> root_label(parent_.size(), kUnset);
    std::vector<Element> out(parent_.size());
    Element next = 0;
    for (Element x = 0; x < parent_.size(); ++x) {
      Element r = find(x);
      if (root_label[r] == kUnset) {
        root_label[r] = next++;
      }
      out[x] = root_label[r];
    }
    return out;
  }

 private:
  static constexpr Element kUnset = ~Element{0};
  std::vector<Element> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace finsemi::detail
