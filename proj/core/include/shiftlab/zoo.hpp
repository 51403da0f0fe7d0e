#pragma once

#include <string>
#include <vector>

#include "shiftlab/engine.hpp"

namespace shiftlab {

Subshift full_shift(const Group& group, int k);
/// Forbidden pairs {1 at e, 1 at s} for each s in f; e must not lie in f.
Subshift hard_square(const Group& group, const FiniteSubset& f);
/// At most one occurrence of symbol 1 anywhere.
Subshift sunny_side_up(const Group& group);
/// The five-dot GF(2) shift on F_2: sum over the unit ball vanishes at
/// every translate.
Subshift five_dot_cross();
/// Edge matchings of the F_2 Cayley tree, alphabet {a, b, A, B}.
Subshift perfect_matchings();
/// The three-dot GF(2) shift on Z^2, support {(0,0),(1,0),(0,1)}.
Subshift ledrappier();

/// One documented expected behavior of a zoo system.  The acceptance suite
/// executes every expectation of every entry; the zoo doubles as the test
/// manifest.  Set descriptors use the CLI grammar ("ball:2", "box:4",
/// "set:[...]").
struct Expectation {
  enum class Kind {
    window_count,        // |admissible(window)| == count
    window_rate_eq,      // |rate(window) - value| <= tol
    window_rate_max,     // rate(window) <= value
    entropy_oracle,      // |transfer_matrix_entropy(memory) - value| <= tol
    microstate_count,    // cyclic_microstate_count(n, beta) == count
    tmp_holds,           // check_memory_set(A, B, W) holds
    tmp_counterexample,  // ... yields a verified counterexample
    pair_exists,         // find_interchangeable_pair(A, W) finds a witness
    pair_none,           // ... NoneUpToScale
    homoclinic_exists,   // homoclinic_search(bg, radius, margin) finds one
    homoclinic_none,
    independence_size,   // best independence set inside F has this size
    local_global_stable, // counts for r = 0..r_max all equal
    extends_true,        // the given pattern extends to the window
  };

  Kind kind;
  std::string note;  // origin of the expected value (oracle, closed form...)
  std::string level = "local:0";

  std::string window;         // window/F/W descriptor
  std::string a_set, b_set;   // TMP / pair descriptors
  BigInt count = 0;
  double value = 0.0;
  double tol = 0.0;
  int memory = 0;
  int n = 0, beta = 0;
  int radius = 0, margin = -1;  // -1: rule-diameter default
  int r_max = 0;
  std::string background = "0";
  int expected_size = -1;
  // Cylinders / pattern payloads as (site, symbol-name) lists.
  std::vector<std::vector<std::pair<std::string, std::string>>> cylinders;
};

struct ZooEntry {
  std::string name;
  Subshift shift;
  std::string provenance;
  std::vector<Expectation> expectations;
};

/// Every built-in system, with its documented expectations.
std::vector<ZooEntry> zoo_entries();

const ZooEntry& zoo_find(const std::vector<ZooEntry>& entries,
                         const std::string& name);

}  // namespace shiftlab
