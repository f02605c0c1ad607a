#pragma once
// Cartesian product of weighted graphs. Product vertices are tuples (one
// coordinate per factor), encoded in mixed radix with factor 0 most
// significant; product edges change exactly one coordinate along an edge of
// that factor and copy the parent edge's weight.

#include <stdexcept>
#include <string>
#include <vector>

#include <gfact/graph.hpp>

namespace gfact {

// Mixed-radix codec between coordinate tuples and dense product vertex ids.
class TupleCodec {
 public:
  explicit TupleCodec(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    strides_.assign(sizes_.size(), 1);
    total_ = 1;
    for (int i = static_cast<int>(sizes_.size()) - 1; i >= 0; --i) {
      if (sizes_[i] <= 0) throw std::invalid_argument("empty factor");
      strides_[i] = total_;
      total_ *= sizes_[i];
    }
  }

  int arity() const { return static_cast<int>(sizes_.size()); }
  long long total() const { return total_; }
  int size(int i) const { return sizes_.at(i); }
  long long stride(int i) const { return strides_.at(i); }

  long long encode(const std::vector<int>& tuple) const {
    long long id = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      if (tuple[i] < 0 || tuple[i] >= sizes_[i])
        throw std::invalid_argument("tuple coordinate out of range");
      id += tuple[i] * strides_[i];
    }
    return id;
  }

  std::vector<int> decode(long long id) const {
    std::vector<int> tuple(sizes_.size());
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      tuple[i] = static_cast<int>(id / strides_[i]);
      id %= strides_[i];
    }
    return tuple;
  }

 private:
  std::vector<int> sizes_;
  std::vector<long long> strides_;
  long long total_ = 1;
};

inline TupleCodec product_codec(const std::vector<WeightedGraph>& factors) {
  std::vector<int> sizes;
  sizes.reserve(factors.size());
  for (const auto& f : factors) sizes.push_back(f.vertex_count());
  return TupleCodec(std::move(sizes));
}

inline WeightedGraph cartesian_product(const std::vector<WeightedGraph>& factors) {
  if (factors.empty())
    throw std::invalid_argument("cartesian product of an empty factor list");
  const TupleCodec codec = product_codec(factors);
  const long long total = codec.total();
  if (total > (1LL << 22))
    throw std::invalid_argument("cartesian product too large to materialize");

  std::vector<std::string> labels;
  labels.reserve(total);
  for (long long id = 0; id < total; ++id) {
    const std::vector<int> tuple = codec.decode(id);
    std::string label = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) label += ",";
      label += factors[i].label(tuple[i]);
    }
    label += ")";
    labels.push_back(std::move(label));
  }

  std::vector<Edge> edges;
  for (std::size_t ell = 0; ell < factors.size(); ++ell) {
    const long long stride = codec.stride(static_cast<int>(ell));
    const long long block = stride * factors[ell].vertex_count();
    for (const Edge& fe : factors[ell].edges()) {
      for (long long hi = 0; hi < total / block; ++hi) {
        for (long long lo = 0; lo < stride; ++lo) {
          const long long base = hi * block + lo;
          edges.push_back({static_cast<int>(base + fe.u * stride),
                           static_cast<int>(base + fe.v * stride), fe.w});
        }
      }
    }
  }
  return WeightedGraph(std::move(labels), edges);
}

struct ParentEdge {
  int factor;
  int edge;
};

// The unique factor edge whose endpoints differ across product edge e.
inline ParentEdge parent_edge(const WeightedGraph& product,
                              const std::vector<WeightedGraph>& factors, int e) {
  const TupleCodec codec = product_codec(factors);
  if (codec.total() != product.vertex_count())
    throw std::invalid_argument("product size does not match factor list");
  const Edge& pe = product.edge(e);
  const std::vector<int> tu = codec.decode(pe.u);
  const std::vector<int> tv = codec.decode(pe.v);
  int where = -1;
  for (int i = 0; i < codec.arity(); ++i) {
    if (tu[i] != tv[i]) {
      if (where >= 0)
        throw std::invalid_argument("product edge differs in more than one coordinate");
      where = i;
    }
  }
  if (where < 0)
    throw std::invalid_argument("product edge endpoints are identical");
  const auto fe = factors[where].find_edge(tu[where], tv[where]);
  if (!fe)
    throw std::invalid_argument("differing coordinate pair is not a factor edge");
  return {where, *fe};
}

}  // namespace gfact
