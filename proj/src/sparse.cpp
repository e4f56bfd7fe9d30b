#include "bf/sparse.hpp"

#include <algorithm>
#include <map>

namespace bf {

SparseVec sparse_of(const FqVec& v) {
  SparseVec out;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.emplace_back(uint32_t(i), v[i]);
  return out;
}

FqVec dense_of(const Fq& F, const SparseVec& v, size_t n) {
  (void)F;
  FqVec out(n, 0);
  for (auto& [i, c] : v) out[i] = c;
  return out;
}

SparseVec sp_axpy(const Fq& F, const SparseVec& a, FqElt c,
                  const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      FqElt v = F.mul(c, b[j].second);
      if (v != 0) out.emplace_back(b[j].first, v);
      ++j;
    } else {
      FqElt v = F.add(a[i].second, F.mul(c, b[j].second));
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec sp_scale(const Fq& F, FqElt c, const SparseVec& a) {
  SparseVec out;
  if (c == 0) return out;
  out.reserve(a.size());
  for (auto& [i, v] : a) {
    FqElt w = F.mul(c, v);
    if (w != 0) out.emplace_back(i, w);
  }
  return out;
}

namespace {

// subtract c * row from w; every index the subtraction introduces is
// greater than row's pivot (its first entry)
void eliminate(const Fq& F, std::map<uint32_t, FqElt>& w, FqElt c,
               const SparseVec& row) {
  for (auto& [j, a] : row) {
    FqElt delta = F.neg(F.mul(c, a));
    auto it = w.find(j);
    if (it == w.end()) {
      if (delta != 0) w.emplace(j, delta);
    } else {
      FqElt v = F.add(it->second, delta);
      if (v == 0)
        w.erase(it);
      else
        it->second = v;
    }
  }
}

}  // namespace

bool SparseElim::insert(SparseVec v) {
  std::map<uint32_t, FqElt> w(v.begin(), v.end());
  auto it = w.begin();
  while (it != w.end()) {
    auto pr = pivot_row_.find(it->first);
    if (pr == pivot_row_.end()) {
      ++it;
      continue;
    }
    uint32_t col = it->first;
    eliminate(*F_, w, it->second, rows_[pr->second]);
    it = w.upper_bound(col);
  }
  if (w.empty()) return false;
  uint32_t piv = w.begin()->first;
  FqElt iv = F_->inv(w.begin()->second);
  SparseVec row;
  row.reserve(w.size());
  for (auto& [j, c] : w) row.emplace_back(j, F_->mul(iv, c));
  pivot_row_.emplace(piv, uint32_t(rows_.size()));
  rows_.push_back(std::move(row));
  row_pivot_.push_back(piv);
  return true;
}

SparseVec SparseElim::reduce(SparseVec v) const {
  std::map<uint32_t, FqElt> w(v.begin(), v.end());
  auto it = w.begin();
  while (it != w.end()) {
    auto pr = pivot_row_.find(it->first);
    if (pr == pivot_row_.end()) {
      ++it;
      continue;
    }
    uint32_t col = it->first;
    eliminate(*F_, w, it->second, rows_[pr->second]);
    it = w.upper_bound(col);
  }
  return SparseVec(w.begin(), w.end());
}

std::vector<uint32_t> SparseElim::pivot_cols() const {
  std::vector<uint32_t> out = row_pivot_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint32_t> SparseElim::free_cols(uint32_t ambient) const {
  std::vector<uint32_t> out;
  for (uint32_t j = 0; j < ambient; ++j)
    if (!pivot_at(j)) out.push_back(j);
  return out;
}

std::vector<SparseVec> SparseElim::kernel(uint32_t ambient) const {
  std::vector<SparseVec> out;
  for (uint32_t f : free_cols(ambient)) {
    std::unordered_map<uint32_t, FqElt> x;
    x.emplace(f, 1);
    for (size_t k = rows_.size(); k-- > 0;) {
      FqElt s = 0;
      for (auto& [j, a] : rows_[k]) {
        if (j == row_pivot_[k]) continue;
        auto it = x.find(j);
        if (it != x.end()) s = F_->add(s, F_->mul(a, it->second));
      }
      if (s != 0) x.emplace(row_pivot_[k], F_->neg(s));
    }
    SparseVec v(x.begin(), x.end());
    std::sort(v.begin(), v.end());
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace bf
