#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "finsemi/error.hpp"
#include "finsemi/limits.hpp"

namespace finsemi {

// A finite semigroup given by its multiplication table over 0..n-1.
//
// Instances are cheap handles onto immutable shared data, so copies share the
// table. Two semigroups compare equal when their tables are equal; labels and
// cached generators are presentation only.
class FiniteSemigroup {
 public:
  // Caller guarantees closure and associativity. Everything outside this
  // header goes through validate_table or one of the named constructors.
  static FiniteSemigroup trusted(std::size_t                          order,
                                 std::vector<Element>                 table,
                                 std::vector<std::string>             labels = {},
                                 std::optional<std::vector<Element>> generators
                                 = std::nullopt) {
    auto data        = std::make_shared<Data>();
    data->order      = order;
    data->table      = std::move(table);
    data->labels     = std::move(labels);
    data->generators = std::move(generators);
    return FiniteSemigroup(std::move(data));
  }

  std::size_t order() const noexcept { return data_->order; }
  std::size_t size() const noexcept { return data_->order; }

  Element product(Element a, Element b) const noexcept {
    return data_->table[static_cast<std::size_t>(a) * data_->order + b];
  }

  std::span<Element const> row(Element a) const noexcept {
    return {data_->table.data() + static_cast<std::size_t>(a) * data_->order,
            data_->order};
  }

  std::span<Element const> table() const noexcept { return data_->table; }

  std::vector<std::string> const& labels() const noexcept {
    return data_->labels;
  }

  bool has_labels() const noexcept { return !data_->labels.empty(); }

  std::optional<std::vector<Element>> const& generators() const noexcept {
    return data_->generators;
  }

  // Same table, new labels. Labels must be n distinct whitespace-free words.
  FiniteSemigroup with_labels(std::vector<std::string> labels) const {
    check_labels(labels, order());
    return trusted(order(), data_->table, std::move(labels),
                   data_->generators);
  }

  bool is_idempotent(Element a) const noexcept { return product(a, a) == a; }

  friend bool operator==(FiniteSemigroup const& x, FiniteSemigroup const& y) {
    return x.data_ == y.data_
           || (x.data_->order == y.data_->order
               && x.data_->table == y.data_->table);
  }

  static void check_labels(std::vector<std::string> const& labels,
                           std::size_t                     n) {
    if (labels.empty()) {
      return;
    }
    if (labels.size() != n) {
      throw InvalidArgument("expected " + std::to_string(n) + " labels, got "
                            + std::to_string(labels.size()));
    }
    std::unordered_set<std::string> seen;
    for (auto const& l : labels) {
      if (l.empty()
          || std::any_of(l.begin(), l.end(), [](unsigned char c) {
               return std::isspace(c) != 0;
             })) {
        throw InvalidArgument("labels must be non-empty and whitespace-free");
      }
      if (!seen.insert(l).second) {
        throw InvalidArgument("duplicate label '" + l + "'");
      }
    }
  }

 private:
  struct Data {
    std::size_t                         order = 0;
    std::vector<Element>                table;
    std::vector<std::string>            labels;
    std::optional<std::vector<Element>> generators;
  };

  explicit FiniteSemigroup(std::shared_ptr<Data const> data)
      : data_(std::move(data)) {}

  std::shared_ptr<Data const> data_;
};

namespace detail {

  // Adds `x` to the subset closed under `mul` and restores closure. `in` and
  // `members` describe the current closed subset and are updated in place.
  template <typename Mul>
  void close_with(Element x, std::vector<char>& in,
                  std::vector<Element>& members, Mul&& mul) {
    if (in[x]) {
      return;
    }
    std::size_t next = members.size();
    in[x]            = 1;
    members.push_back(x);
    for (; next < members.size(); ++next) {
      Element u = members[next];
      // members may grow while scanning; index rather than iterate
      for (std::size_t j = 0; j <= next; ++j) {
        Element v = members[j];
        for (Element p : {mul(u, v), mul(v, u)}) {
          if (!in[p]) {
            in[p] = 1;
            members.push_back(p);
          }
        }
      }
    }
  }

  // Greedy generating set of the magma `mul` on 0..n-1: every element not
  // generated by the ones scanned before it. May be redundant (a later
  // generator can produce an earlier one).
  template <typename Mul>
  std::vector<Element> greedy_generators(std::size_t n, Mul&& mul) {
    std::vector<char>    in(n, 0);
    std::vector<Element> members;
    std::vector<Element> gens;
    for (Element x = 0; x < n; ++x) {
      if (!in[x]) {
        gens.push_back(x);
        close_with(x, in, members, mul);
      }
    }
    return gens;
  }

  inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
      if (base != 0 && r > UINT64_MAX / base) {
        return UINT64_MAX;
      }
      r *= base;
    }
    return r;
  }

}  // namespace detail

// Validates a row-major table. Ranges are checked in row-major order before
// associativity. Associativity is decided with Light's test over a generating
// set of the table's magma; on failure the n^3 scan locates the
// lexicographically first bad triple, which is what gets reported.
inline FiniteSemigroup validate_table(std::size_t              order,
                                      std::vector<Element>     table,
                                      std::vector<std::string> labels = {}) {
  if (order == 0) {
    throw InvalidArgument("order must be positive");
  }
  if (table.size() != order * order) {
    throw InvalidArgument("table must have order x order entries");
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] >= order) {
      throw OutOfRangeEntry(i / order, i % order, table[i]);
    }
  }
  FiniteSemigroup::check_labels(labels, order);

  auto const mul = [&](Element a, Element b) {
    return table[static_cast<std::size_t>(a) * order + b];
  };
  bool ok = true;
  for (Element x : detail::greedy_generators(order, mul)) {
    for (Element a = 0; a < order && ok; ++a) {
      Element ax = mul(a, x);
      for (Element b = 0; b < order; ++b) {
        if (mul(ax, b) != mul(a, mul(x, b))) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) {
      break;
    }
  }
  if (!ok) {
    for (Element a = 0; a < order; ++a) {
      for (Element b = 0; b < order; ++b) {
        for (Element c = 0; c < order; ++c) {
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
            throw NotAssociative(a, b, c);
          }
        }
      }
    }
    throw InternalError("Light's test disagrees with the exhaustive scan");
  }
  return FiniteSemigroup::trusted(order, std::move(table), std::move(labels));
}

inline FiniteSemigroup validate_table(std::size_t                    order,
                                      std::span<std::uint64_t const> flat,
                                      std::vector<std::string> labels = {}) {
  if (order == 0) {
    throw InvalidArgument("order must be positive");
  }
  if (flat.size() != order * order) {
    throw InvalidArgument("table must have order x order entries");
  }
  std::vector<Element> table(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i] >= order) {
      throw OutOfRangeEntry(i / order, i % order, flat[i]);
    }
    table[i] = static_cast<Element>(flat[i]);
  }
  return validate_table(order, std::move(table), std::move(labels));
}

inline FiniteSemigroup
validate_table(std::size_t                                   order,
               std::vector<std::vector<std::uint64_t>> const& rows,
               std::vector<std::string>                       labels = {}) {
  if (rows.size() != order) {
    throw InvalidArgument("table must have " + std::to_string(order)
                          + " rows");
  }
  std::vector<std::uint64_t> flat;
  flat.reserve(order * order);
  for (auto const& r : rows) {
    if (r.size() != order) {
      throw InvalidArgument("every row must have " + std::to_string(order)
                            + " entries");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return validate_table(order, std::span<std::uint64_t const>(flat),
                        std::move(labels));
}

namespace detail {
  inline void check_order(std::uint64_t n, Limits const& limits) {
    if (n == 0) {
      throw InvalidArgument("order must be positive");
    }
    if (n > limits.max_order) {
      throw SizeBoundExceeded("semigroup", n, limits.max_order);
    }
  }
}  // namespace detail

// x * y = x
inline FiniteSemigroup left_zero(std::size_t n, Limits const& limits = {}) {
  detail::check_order(n, limits);
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill_n(table.begin() + a * n, n, static_cast<Element>(a));
  }
  return FiniteSemigroup::trusted(n, std::move(table));
}

// Addition modulo n.
inline FiniteSemigroup cyclic_group(std::size_t n, Limits const& limits = {}) {
  detail::check_order(n, limits);
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      table[a * n + b] = static_cast<Element>((a + b) % n);
    }
  }
  return FiniteSemigroup::trusted(n, std::move(table));
}

// Nonempty subsets of {0..k-1} under union. Element i is the bitmask i + 1,
// so masks appear in increasing numeric order; the k singletons are recorded
// as generators.
inline FiniteSemigroup free_semilattice(std::size_t   k,
                                        Limits const& limits = {}) {
  if (k == 0 || k >= 64) {
    throw InvalidArgument("free_semilattice needs 1 <= k < 64");
  }
  std::uint64_t const n64 = (std::uint64_t{1} << k) - 1;
  detail::check_order(n64, limits);
  auto const           n = static_cast<std::size_t>(n64);
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      table[a * n + b] = static_cast<Element>(((a + 1) | (b + 1)) - 1);
    }
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t mask = 1; mask <= n; ++mask) {
    std::string l = "{";
    for (std::size_t bit = 0; bit < k; ++bit) {
      if (mask & (std::size_t{1} << bit)) {
        if (l.size() > 1) {
          l += ',';
        }
        l += std::to_string(bit);
      }
    }
    labels.push_back(l + "}");
  }
  std::vector<Element> gens;
  for (std::size_t bit = 0; bit < k; ++bit) {
    gens.push_back(static_cast<Element>((std::size_t{1} << bit) - 1));
  }
  return FiniteSemigroup::trusted(n, std::move(table), std::move(labels),
                                  std::move(gens));
}

// Pairs (a, b) ordered lexicographically: index a * |B| + b.
inline FiniteSemigroup direct_product(FiniteSemigroup const& A,
                                      FiniteSemigroup const& B,
                                      Limits const&          limits = {}) {
  std::uint64_t const n64 = std::uint64_t{A.order()} * B.order();
  if (n64 > limits.max_order) {
    throw SizeBoundExceeded("direct product", n64, limits.max_order);
  }
  auto const           n  = static_cast<std::size_t>(n64);
  auto const           nb = B.order();
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      auto a = A.product(static_cast<Element>(x / nb),
                         static_cast<Element>(y / nb));
      auto b = B.product(static_cast<Element>(x % nb),
                         static_cast<Element>(y % nb));
      table[x * n + y] = static_cast<Element>(a * nb + b);
    }
  }
  std::vector<std::string> labels;
  if (A.has_labels() || B.has_labels()) {
    auto name = [](FiniteSemigroup const& S, std::size_t i) {
      return S.has_labels() ? S.labels()[i] : std::to_string(i);
    };
    for (std::size_t x = 0; x < n; ++x) {
      labels.push_back("(" + name(A, x / nb) + "," + name(B, x % nb) + ")");
    }
  }
  return FiniteSemigroup::trusted(n, std::move(table), std::move(labels));
}

// Sorted elements of the subsemigroup generated by `gens`.
inline std::vector<Element> closure(FiniteSemigroup const&   S,
                                    std::span<Element const> gens) {
  std::vector<char>    in(S.order(), 0);
  std::vector<Element> members;
  auto mul = [&S](Element a, Element b) { return S.product(a, b); };
  for (Element g : gens) {
    if (g >= S.order()) {
      throw InvalidArgument("element " + std::to_string(g) + " out of range");
    }
    detail::close_with(g, in, members, mul);
  }
  std::sort(members.begin(), members.end());
  return members;
}

inline bool generates(FiniteSemigroup const& S, std::span<Element const> gens) {
  return closure(S, gens).size() == S.order();
}

// Irredundant generating set: scan in index order keeping every element not
// yet generated, then drop, in order, each generator the others already
// produce. One pruning pass suffices: a generator needed by a set is needed by
// every subset. Uses the generators recorded on S when there are any.
inline std::vector<Element> minimal_generating_set(FiniteSemigroup const& S) {
  if (S.generators()) {
    return *S.generators();
  }
  auto gens = detail::greedy_generators(
      S.order(), [&S](Element a, Element b) { return S.product(a, b); });
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<Element> rest(gens);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (!rest.empty() && generates(S, rest)) {
      gens = std::move(rest);
    } else {
      ++i;
    }
  }
  return gens;
}

inline std::vector<Element> idempotents(FiniteSemigroup const& S) {
  std::vector<Element> out;
  for (Element a = 0; a < S.order(); ++a) {
    if (S.is_idempotent(a)) {
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace finsemi
