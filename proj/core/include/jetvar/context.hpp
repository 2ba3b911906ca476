#pragma once

#include <cstdlib>

namespace jetvar {

// Ambient data every jet-space computation needs: how many base axes exist
// and how deep jet prolongation may go before the engine refuses.
struct JetContext {
  int dim = 4;
  int max_jet_order = default_max_jet_order();

  friend bool operator==(const JetContext&, const JetContext&) = default;

  // Environment override JETVAR_MAX_JET_ORDER; 10 otherwise.
  static int default_max_jet_order() {
    if (const char* s = std::getenv("JETVAR_MAX_JET_ORDER")) {
      int v = std::atoi(s);
      if (v > 0) return v;
    }
    return 10;
  }
};

}  // namespace jetvar
