#pragma once

#include <array>
#include <vector>

#include "ymlab/approx_model.hpp"

namespace ymlab {

enum class Boundary { Free, Periodic };

// Hypercubic lattice with coordinates 0..L-1; coordinate 0 is time.
// Bonds run from x to x + e_mu. With periodic b.c. the wrapping bonds from
// x_mu = L-1 are "extra". The fixed set is the enhanced temporal gauge tree.
class LatticeGeometry {
 public:
  struct Bond {
    int site;
    int direction;
    bool extra;
    bool fixed;
  };
  // Bonds in the order b_mu(x), b_nu(x+mu), b_mu(x+nu), b_nu(x); the
  // plaquette variable is U0 U1 U2^dagger U3^dagger.
  struct Plaquette {
    int site;
    int mu;
    int nu;
    std::array<int, 4> bonds;
  };
  struct Incidence {
    int plaquette;
    int position;
  };

  LatticeGeometry(int d, int L, Boundary boundary);

  int dimension() const { return d_; }
  int extent() const { return L_; }
  Boundary boundary() const { return boundary_; }
  LatticeCounts counts() const { return lattice_counts(d_, L_); }

  int site_count() const { return static_cast<int>(site_total_); }
  int site_index(const std::array<int, 4>& x) const;
  std::array<int, 4> coordinates(int site) const;
  // Neighbour in direction mu (wraps under periodic b.c.; -1 past a free edge).
  int shift(int site, int mu, int step = 1) const;

  const std::vector<Bond>& bonds() const { return bonds_; }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }
  const std::vector<int>& retained_bonds() const { return retained_; }
  const std::vector<int>& fixed_bonds() const { return fixed_; }
  const std::vector<Incidence>& incidence(int bond) const { return incidence_[bond]; }
  int bond_index(int site, int mu) const { return bond_of_[site * d_ + mu]; }
  int plaquette_index(int site, int mu, int nu) const;

  // Fixed bonds touch every site and contain no cycle.
  bool fixed_set_is_spanning_tree() const;

 private:
  int d_;
  int L_;
  Boundary boundary_;
  long long site_total_;
  std::vector<Bond> bonds_;
  std::vector<int> bond_of_;
  std::vector<Plaquette> plaquettes_;
  std::vector<int> plaquette_of_;
  std::vector<int> retained_;
  std::vector<int> fixed_;
  std::vector<std::vector<Incidence>> incidence_;
};

const char* to_string(Boundary b);

}  // namespace ymlab
