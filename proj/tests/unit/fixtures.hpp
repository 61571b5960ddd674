#pragma once

#include <attodress/attodress.hpp>

namespace attodress::fixtures {

// 2048-point box; bound levels 0..4 agree with the large box to ~1e-4.
inline const System& small_system() {
  static const System sys = [] {
    Config c;
    c.grid_box = 204.8;
    return System::from_config(c);
  }();
  return sys;
}

inline Pulse laser(double e_max) { return Pulse(e_max, 0.06, 126.78, 0.0); }
inline Pulse probe(double e_max, double tau) { return Pulse(e_max, 1.34, 10.84, tau); }

}  // namespace attodress::fixtures
