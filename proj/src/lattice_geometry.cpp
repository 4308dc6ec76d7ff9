#include "ymlab/lattice_geometry.hpp"

#include <numeric>
#include <string>

namespace ymlab {

namespace {

// Bond b_mu(x) belongs to the tree when all coordinates before mu are 0.
bool in_gauge_tree(const std::array<int, 4>& x, int mu) {
  for (int k = 0; k < mu; ++k)
    if (x[k] != 0) return false;
  return true;
}

int find_root(std::vector<int>& parent, int v) {
  while (parent[v] != v) v = parent[v] = parent[parent[v]];
  return v;
}

}  // namespace

const char* to_string(Boundary b) { return b == Boundary::Free ? "free" : "periodic"; }

LatticeGeometry::LatticeGeometry(int d, int L, Boundary boundary) : d_(d), L_(L), boundary_(boundary) {
  if (d < 2 || d > 4) throw InvalidLattice("d must be 2, 3 or 4, got " + std::to_string(d));
  if (L < 2 || L % 2 != 0) throw InvalidLattice("L must be even and at least 2, got " + std::to_string(L));
  site_total_ = 1;
  for (int k = 0; k < d; ++k) site_total_ *= L;
  if (site_total_ > (1LL << 24)) throw InvalidLattice("lattice too large");

  bond_of_.assign(site_total_ * d, -1);
  for (int s = 0; s < site_total_; ++s) {
    const auto x = coordinates(s);
    for (int mu = 0; mu < d; ++mu) {
      const bool extra = x[mu] == L - 1;
      if (extra && boundary == Boundary::Free) continue;
      Bond b{s, mu, extra, !extra && in_gauge_tree(x, mu)};
      bond_of_[s * d + mu] = static_cast<int>(bonds_.size());
      (b.fixed ? fixed_ : retained_).push_back(static_cast<int>(bonds_.size()));
      bonds_.push_back(b);
    }
  }

  incidence_.resize(bonds_.size());
  plaquette_of_.assign(site_total_ * d * d, -1);
  for (int s = 0; s < site_total_; ++s) {
    for (int mu = 0; mu < d; ++mu) {
      for (int nu = mu + 1; nu < d; ++nu) {
        const int xm = shift(s, mu);
        const int xn = shift(s, nu);
        if (xm < 0 || xn < 0) continue;
        Plaquette p{s, mu, nu, {bond_index(s, mu), bond_index(xm, nu), bond_index(xn, mu), bond_index(s, nu)}};
        const int id = static_cast<int>(plaquettes_.size());
        plaquette_of_[(s * d + mu) * d + nu] = id;
        for (int k = 0; k < 4; ++k) incidence_[p.bonds[k]].push_back({id, k});
        plaquettes_.push_back(p);
      }
    }
  }
}

int LatticeGeometry::site_index(const std::array<int, 4>& x) const {
  int s = 0;
  for (int k = d_ - 1; k >= 0; --k) {
    if (x[k] < 0 || x[k] >= L_) throw InvalidLattice("coordinate out of range");
    s = s * L_ + x[k];
  }
  return s;
}

std::array<int, 4> LatticeGeometry::coordinates(int site) const {
  std::array<int, 4> x{0, 0, 0, 0};
  for (int k = 0; k < d_; ++k) {
    x[k] = site % L_;
    site /= L_;
  }
  return x;
}

int LatticeGeometry::shift(int site, int mu, int step) const {
  auto x = coordinates(site);
  int v = x[mu] + step;
  if (v < 0 || v >= L_) {
    if (boundary_ == Boundary::Free) return -1;
    v = ((v % L_) + L_) % L_;
  }
  x[mu] = v;
  return site_index(x);
}

int LatticeGeometry::plaquette_index(int site, int mu, int nu) const {
  if (mu > nu) std::swap(mu, nu);
  if (mu == nu || nu >= d_) return -1;
  return plaquette_of_[(site * d_ + mu) * d_ + nu];
}

bool LatticeGeometry::fixed_set_is_spanning_tree() const {
  std::vector<int> parent(site_total_);
  std::iota(parent.begin(), parent.end(), 0);
  for (int b : fixed_) {
    const int u = find_root(parent, bonds_[b].site);
    const int v = find_root(parent, shift(bonds_[b].site, bonds_[b].direction));
    if (u == v) return false;
    parent[u] = v;
  }
  return static_cast<long long>(fixed_.size()) == site_total_ - 1;
}

}  // namespace ymlab
