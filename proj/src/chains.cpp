#include "plchain/chains.hpp"

#include <algorithm>
#include <stdexcept>

namespace plchain {

Chain& Chain::operator+=(const Chain& o) {
  if (o.zero()) return *this;
  if (!complex) {
    *this = o;
    return *this;
  }
  if (complex != o.complex || degree != o.degree)
    throw std::invalid_argument("chain sum across complexes or degrees");
  for (const auto& [i, v] : o.coeffs) add(i, v);
  return *this;
}

Chain& Chain::operator*=(const Int& c) {
  if (c == 0) {
    coeffs.clear();
    return *this;
  }
  for (auto& [i, v] : coeffs) v *= c;
  return *this;
}

Chain operator-(Chain a, const Chain& b) {
  Chain nb = b;
  nb *= Int(-1);
  return a += nb;
}

SparseMat boundary_matrix(const ComplexPtr& k, int deg) {
  const int rows = k->size(deg - 1), cols = k->size(deg);
  SparseMat m(rows, cols);
  if (deg <= 0 || deg > k->dim()) return m;
  for (int i = 0; i < cols; ++i) {
    auto faces = k->facets_of({deg, i});
    int sign = 1;
    for (auto f : faces) {
      m.add(f.idx, i, sign);
      sign = -sign;
    }
  }
  return m;
}

Chain boundary(const Chain& c) {
  Chain out(c.complex, c.degree - 1);
  if (c.degree <= 0) return out;
  for (const auto& [i, v] : c.coeffs) {
    auto faces = c.complex->facets_of({c.degree, i});
    int sign = 1;
    for (auto f : faces) {
      out.add(f.idx, sign * v);
      sign = -sign;
    }
  }
  return out;
}

Cochain coboundary(const Cochain& a) {
  Cochain out(a.complex, a.degree + 1);
  if (a.degree + 1 > a.complex->dim()) return out;
  const int n = a.complex->size(a.degree + 1);
  for (int i = 0; i < n; ++i) {
    auto faces = a.complex->facets_of({a.degree + 1, i});
    Int acc = 0;
    int sign = 1;
    for (auto f : faces) {
      acc += sign * a.coeff(f.idx);
      sign = -sign;
    }
    if (acc != 0) out.coeffs[i] = acc;
  }
  return out;
}

Int evaluate(const Cochain& a, const Chain& c) {
  if (a.complex != c.complex || a.degree != c.degree) return 0;
  return dot(a.coeffs, c.coeffs);
}

Subcomplex support(const Chain& c, const Subcomplex* rel) {
  Subcomplex out = Subcomplex::empty(c.complex);
  for (const auto& [i, v] : c.coeffs) {
    SimplexId s{c.degree, i};
    if (rel && rel->contains(s)) continue;
    out.insert_closed(s);
  }
  return out;
}

Chain reduce_mod(const Chain& c, const Subcomplex& rel) {
  Chain out(c.complex, c.degree);
  for (const auto& [i, v] : c.coeffs)
    if (!rel.contains({c.degree, i})) out.coeffs[i] = v;
  return out;
}

Chain restrict_to(const Chain& c, const Subcomplex& sub) {
  Chain out(c.complex, c.degree);
  for (const auto& [i, v] : c.coeffs)
    if (sub.contains({c.degree, i})) out.coeffs[i] = v;
  return out;
}

Cochain cup(const Cochain& a, const Cochain& b) {
  if (a.complex != b.complex) throw std::invalid_argument("cup across complexes");
  const auto& k = a.complex;
  const int p = a.degree, q = b.degree;
  Cochain out(k, p + q);
  if (p + q > k->dim()) return out;
  for (int i = 0; i < k->size(p + q); ++i) {
    const auto& vs = k->simplices(p + q)[i];
    VertexList front(vs.begin(), vs.begin() + p + 1);
    auto fid = k->find(front);
    if (!fid) continue;
    Int av = a.coeff(fid->idx);
    if (av == 0) continue;
    VertexList back(vs.begin() + p, vs.end());
    auto bid = k->find(back);
    if (!bid) continue;
    Int bv = b.coeff(bid->idx);
    if (bv == 0) continue;
    out.coeffs[i] = av * bv;
  }
  return out;
}

Chain cap(const Cochain& a, const Chain& x) {
  if (a.complex != x.complex) throw std::invalid_argument("cap across complexes");
  const auto& k = a.complex;
  const int p = a.degree, n = x.degree;
  if (p > n) throw std::invalid_argument("cap: cochain degree exceeds chain degree");
  Chain out(k, n - p);
  for (const auto& [i, c] : x.coeffs) {
    const auto& vs = k->simplices(n)[i];
    VertexList back(vs.end() - (p + 1), vs.end());
    auto bid = k->find(back);
    if (!bid) continue;
    Int av = a.coeff(bid->idx);
    if (av == 0) continue;
    VertexList front(vs.begin(), vs.begin() + (n - p) + 1);
    out.add(k->require(front).idx, av * c);
  }
  return out;
}

Chain cross_chain(const ProductComplex& p, const Chain& z, const Chain& w) {
  if (z.complex != p.left || w.complex != p.right)
    throw std::invalid_argument("cross_chain: factors off the product's factors");
  const int jd = z.degree, kd = w.degree;
  Chain out(p.total, jd + kd);
  for (const auto& [zi, zv] : z.coeffs) {
    const auto& sv = z.complex->simplices(jd)[zi];
    for (const auto& [wi, wv] : w.coeffs) {
      const auto& tv = w.complex->simplices(kd)[wi];
      // all (jd, kd)-shuffles as lattice paths; sign = parity of the shuffle
      const int total = jd + kd;
      auto emit = [&](const std::vector<int>& wpos) {
        int inv = 0;  // pairs (w-step before u-step)
        {
          size_t wp = 0;
          int seen_w = 0;
          for (int step = 0; step < total; ++step) {
            if (wp < wpos.size() && wpos[wp] == step) {
              ++seen_w;
              ++wp;
            } else {
              inv += seen_w;
            }
          }
        }
        VertexList path;
        path.push_back(p.pair_index[sv[0]][tv[0]]);
        int iu = 0, iw = 0;
        size_t wp = 0;
        for (int step = 0; step < total; ++step) {
          if (wp < wpos.size() && wpos[wp] == step) {
            ++iw;
            ++wp;
          } else {
            ++iu;
          }
          path.push_back(p.pair_index[sv[iu]][tv[iw]]);
        }
        auto sid = p.total->require(path);
        out.add(sid.idx, (inv % 2 ? Int(-1) : Int(1)) * zv * wv);
      };
      if (kd == 0) {
        emit({});
      } else {
        std::vector<int> wpos(kd);
        for (int r = 0; r < kd; ++r) wpos[r] = r;
        for (;;) {
          emit(wpos);
          int i = kd - 1;
          while (i >= 0 && wpos[i] == total - kd + i) --i;
          if (i < 0) break;
          ++wpos[i];
          for (int r = i + 1; r < kd; ++r) wpos[r] = wpos[r - 1] + 1;
        }
      }
    }
  }
  return out;
}

Cochain cross_cochain(const ProductComplex& p, const Cochain& a, const Cochain& b) {
  const int pa = a.degree, qb = b.degree;
  Cochain out(p.total, pa + qb);
  const auto& t = p.total;
  if (pa + qb > t->dim()) return out;
  for (int i = 0; i < t->size(pa + qb); ++i) {
    const auto& vs = t->simplices(pa + qb)[i];
    // front projection to the left factor
    VertexList fu;
    bool ok = true;
    for (int r = 0; r <= pa; ++r) {
      Vertex u = p.proj_left(vs[r]);
      if (!fu.empty() && u <= fu.back()) {
        ok = false;
        break;
      }
      fu.push_back(u);
    }
    if (!ok) continue;
    auto fid = p.left->find(fu);
    if (!fid) continue;
    Int av = a.coeff(fid->idx);
    if (av == 0) continue;
    VertexList bw;
    for (int r = pa; r <= pa + qb; ++r) {
      Vertex w = p.proj_right(vs[r]);
      if (!bw.empty() && w <= bw.back()) {
        ok = false;
        break;
      }
      bw.push_back(w);
    }
    if (!ok) continue;
    auto bid = p.right->find(bw);
    if (!bid) continue;
    Int bv = b.coeff(bid->idx);
    if (bv == 0) continue;
    out.coeffs[i] = av * bv;
  }
  return out;
}

namespace {

// sd(s) for one parent simplex, by the cone recursion
// sd(s) = (-1)^{dim s} cone_{b(s)}(sd(boundary s)), memoized per complex call.
void sd_simplex(const ComplexPtr& derived, const ComplexPtr& parent, SimplexId s,
                std::vector<std::map<int, SparseVec>>& memo, SparseVec& out) {
  auto it = memo[s.dim].find(s.idx);
  if (it != memo[s.dim].end()) {
    out = it->second;
    return;
  }
  const auto& lin = *derived->lineage();
  SparseVec res;
  if (s.dim == 0) {
    Vertex bv = lin.bary_vertex[0][s.idx];
    res[derived->require({bv}).idx] = 1;
  } else {
    // sd of the boundary chain
    SparseVec bsum;  // over derived (dim-1)-simplices
    auto faces = parent->facets_of(s);
    int sign = 1;
    for (auto f : faces) {
      SparseVec fs;
      sd_simplex(derived, parent, f, memo, fs);
      add_scaled(bsum, fs, sign);
      sign = -sign;
    }
    Vertex bv = lin.bary_vertex[s.dim][s.idx];
    for (const auto& [idx, v] : bsum) {
      VertexList vs = derived->simplices(s.dim - 1)[idx];
      vs.push_back(bv);  // barycenter order is graded: bv is the largest
      auto sid = derived->require(vs);
      Int c = (s.dim % 2 ? Int(-1) : Int(1)) * v;
      auto jt = res.find(sid.idx);
      if (jt == res.end())
        res[sid.idx] = c;
      else {
        jt->second += c;
        if (jt->second == 0) res.erase(jt);
      }
    }
  }
  memo[s.dim][s.idx] = res;
  out = res;
}

}  // namespace

Chain subdivide_chain_once(const ComplexPtr& derived, const Chain& c) {
  const auto& lin = derived->lineage();
  if (!lin || lin->parent != c.complex)
    throw std::invalid_argument("subdivide_chain_once: not a subdivision of the chain's complex");
  Chain out(derived, c.degree);
  std::vector<std::map<int, SparseVec>> memo(c.complex->dim() + 1);
  for (const auto& [i, v] : c.coeffs) {
    SparseVec sd;
    sd_simplex(derived, c.complex, {c.degree, i}, memo, sd);
    add_scaled(out.coeffs, sd, v);
  }
  return out;
}

Cochain cochain_pullback_sd(const ComplexPtr& derived, const Cochain& a_on_derived) {
  const auto& lin = derived->lineage();
  if (!lin) throw std::invalid_argument("cochain_pullback_sd: no lineage");
  const auto& parent = lin->parent;
  Cochain out(parent, a_on_derived.degree);
  std::vector<std::map<int, SparseVec>> memo(parent->dim() + 1);
  const int d = a_on_derived.degree;
  if (d > parent->dim()) return out;
  for (int i = 0; i < parent->size(d); ++i) {
    SparseVec sd;
    sd_simplex(derived, parent, {d, i}, memo, sd);
    Int acc = 0;
    for (const auto& [j, v] : sd) acc += v * a_on_derived.coeff(j);
    if (acc != 0) out.coeffs[i] = acc;
  }
  return out;
}

Chain push_vertex_map(const Chain& c, const ComplexPtr& target, const std::vector<Vertex>& vmap) {
  Chain out(target, c.degree);
  for (const auto& [i, v] : c.coeffs) {
    VertexList vs;
    for (Vertex w : c.complex->vertices_of({c.degree, i})) vs.push_back(vmap[w]);
    // degenerate images vanish
    std::vector<std::pair<Vertex, int>> order;
    for (int r = 0; r < (int)vs.size(); ++r) order.push_back({vs[r], r});
    std::sort(order.begin(), order.end());
    bool degenerate = false;
    for (size_t r = 0; r + 1 < order.size(); ++r)
      if (order[r].first == order[r + 1].first) degenerate = true;
    if (degenerate) continue;
    // permutation sign
    std::vector<int> perm;
    for (auto& pr : order) perm.push_back(pr.second);
    int inv = 0;
    for (size_t a1 = 0; a1 < perm.size(); ++a1)
      for (size_t b1 = a1 + 1; b1 < perm.size(); ++b1)
        if (perm[a1] > perm[b1]) ++inv;
    VertexList sorted;
    for (auto& pr : order) sorted.push_back(pr.first);
    auto sid = target->require(sorted);
    out.add(sid.idx, (inv % 2 ? Int(-1) : Int(1)) * v);
  }
  return out;
}

Cochain pullback_cochain(const Cochain& a, const ComplexPtr& source, const std::vector<Vertex>& vmap) {
  Cochain out(source, a.degree);
  if (a.degree > source->dim()) return out;
  for (int i = 0; i < source->size(a.degree); ++i) {
    VertexList img;
    for (Vertex v : source->vertices_of({a.degree, i})) img.push_back(vmap[v]);
    int inv = 0;
    for (size_t p = 0; p < img.size(); ++p)
      for (size_t q = p + 1; q < img.size(); ++q)
        if (img[p] > img[q]) ++inv;
    std::sort(img.begin(), img.end());
    auto t = a.complex->find(img);
    if (!t) continue;
    Int v = a.coeff(t->idx);
    if (v != 0) out.coeffs[i] = (inv % 2 ? -v : v);
  }
  return out;
}

std::vector<Vertex> extend_to_bary(const ComplexPtr& src, const ComplexPtr& src1,
                                   const ComplexPtr& tgt, const ComplexPtr& tgt1,
                                   const std::vector<Vertex>& vmap) {
  const auto& sl = src1->lineage();
  const auto& tl = tgt1->lineage();
  std::vector<Vertex> out(src1->num_vertices(), -1);
  for (int d = 0; d <= src->dim(); ++d)
    for (int i = 0; i < src->size(d); ++i) {
      VertexList img;
      for (Vertex v : src->vertices_of({d, i})) img.push_back(vmap[v]);
      std::sort(img.begin(), img.end());
      auto ti = tgt->require(img);
      out[sl->bary_vertex[d][i]] = tl->bary_vertex[ti.dim][ti.idx];
    }
  return out;
}

}  // namespace plchain
