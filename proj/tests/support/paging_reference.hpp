// Brute-force paging reference for oracle tests.
//
// Re-derives every paging quantity by scanning the full hyper-frame with the
// raw rules, sharing no code with the library. Deliberately naive: sets,
// absolute subframe scans, and a linear offset search.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace paging_reference {

struct Inputs {
  std::uint64_t imsi = 0;
  int beta = 16384;
  int t_idrx = 64;
  int n_control = 64;
  std::map<int, std::vector<int>> lut = {{1, {9}}, {2, {4, 9}}, {4, {0, 4, 5, 9}}};
  int t_sl_drx = 128;  // frames; 0 = low-latency mode (no fixed occasions)
  int n_sl_po = 4;
  int n_cluster = 1;
  int n_dist = 4;
  int n_off = 1;
};

struct Result {
  int ue_id = 0;
  int i_s = 0;
  int i_po = 0;
  int n_off = 0;
  std::set<int> pf;                // cellular paging frames, SFN in [0,1024)
  std::set<int> sl_pf;             // sidelink paging frames, SFN in [0,1024)
  std::set<long long> idrx_po_sf;  // absolute SFs in [0,10240)
  std::set<long long> sl_po_sf;    // absolute SFs in [0,10240)
};

inline Result compute(const Inputs& in) {
  Result r;
  r.ue_id = static_cast<int>(in.imsi % static_cast<std::uint64_t>(in.beta));
  const int nmin = in.t_idrx < in.n_control ? in.t_idrx : in.n_control;
  int ns = in.n_control / in.t_idrx;
  if (ns < 1) ns = 1;
  const long long n_id =
      static_cast<long long>(in.t_idrx / nmin) * (r.ue_id % nmin);
  r.i_s = (r.ue_id / nmin) % ns;
  r.i_po = in.lut.at(ns).at(static_cast<std::size_t>(r.i_s));

  for (int sfn = 0; sfn < 1024; ++sfn) {
    if (sfn % in.t_idrx == n_id) {
      r.pf.insert(sfn);
      r.idrx_po_sf.insert(10LL * sfn + r.i_po);
    }
  }
  if (in.t_sl_drx == 0) return r;  // low-latency mode: no fixed occasions

  const long long target =
      in.t_sl_drx >= in.t_idrx ? n_id : n_id % in.t_sl_drx;
  for (int sfn = 0; sfn < 1024; ++sfn) {
    if (sfn % in.t_sl_drx == target) r.sl_pf.insert(sfn);
  }

  const int per = in.n_sl_po / in.n_cluster;
  for (int off = in.n_off; off <= in.n_off + 200; ++off) {
    std::set<long long> sl;
    bool clean = true;
    for (int sfn : r.sl_pf) {
      for (int j = 0; j < in.n_cluster && clean; ++j) {
        for (int m = 0; m < per && clean; ++m) {
          const long long s =
              (10LL * sfn + r.i_po + off + 1LL * j * in.n_dist + m) % 10240;
          if (!sl.insert(s).second) clean = false;     // layout self-overlap
          if (r.idrx_po_sf.count(s) > 0) clean = false;  // own cellular PO
        }
      }
    }
    if (clean) {
      r.n_off = off;
      r.sl_po_sf = std::move(sl);
      return r;
    }
  }
  throw std::runtime_error("reference: no usable sidelink offset");
}

// Naive next-occasion scan: first subframe strictly after `now` whose
// hyper-frame position is in the occasion set.
inline long long next_sl_po(const std::set<long long>& sl_po_sf,
                            long long now) {
  for (long long sf = now + 1; sf <= now + 2 * 10240; ++sf) {
    if (sl_po_sf.count(sf % 10240) > 0) return sf;
  }
  throw std::runtime_error("reference: empty occasion set");
}

}  // namespace paging_reference
