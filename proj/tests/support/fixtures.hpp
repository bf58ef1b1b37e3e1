#pragma once

#include <string>

#include "pn2sc/net.hpp"

namespace fixtures {

/// q -t1-> {a,b} -t2-> r
pn2sc::PetriNet d1();
/// p0 -t0-> p1 -t1-> ... p<n-1>
pn2sc::PetriNet chain(int places);
/// q -t1-> p -t2-> s -t3-> q
pn2sc::PetriNet cycle3();
/// entry -tf-> {b0..b<k-1>} -tj-> exit
pn2sc::PetriNet fork_join(int branches);

std::string data_path(const std::string& file);

}  // namespace fixtures

namespace pn2sc {

// Backdoor for building corrupted nets in tests.
struct NetSurgery {
  static void drop_from_preset(Transition& t, Place& p) { t.preset_.erase(&p); }
  static void add_post_transition(Place& p, Transition& t) { p.post_.insert(&t); }
};

}  // namespace pn2sc
