#include "fixtures.hpp"

namespace fixtures {

pn2sc::PetriNet d1() {
  pn2sc::PetriNet net("D1");
  for (const char* id : {"q", "a", "b", "r"}) net.add_place(id);
  net.add_transition("t1", {"q"}, {"a", "b"});
  net.add_transition("t2", {"a", "b"}, {"r"});
  return net;
}

pn2sc::PetriNet chain(int places) {
  pn2sc::PetriNet net("chain" + std::to_string(places));
  for (int i = 0; i < places; ++i) net.add_place("p" + std::to_string(i));
  for (int i = 0; i + 1 < places; ++i) {
    net.add_transition("t" + std::to_string(i), {"p" + std::to_string(i)},
                       {"p" + std::to_string(i + 1)});
  }
  return net;
}

pn2sc::PetriNet cycle3() {
  pn2sc::PetriNet net("cycle3");
  for (const char* id : {"q", "p", "s"}) net.add_place(id);
  net.add_transition("t1", {"q"}, {"p"});
  net.add_transition("t2", {"p"}, {"s"});
  net.add_transition("t3", {"s"}, {"q"});
  return net;
}

pn2sc::PetriNet fork_join(int branches) {
  pn2sc::PetriNet net("fork" + std::to_string(branches));
  net.add_place("entry");
  std::vector<std::string> mid;
  for (int i = 0; i < branches; ++i) {
    mid.push_back("b" + std::to_string(i));
    net.add_place(mid.back());
  }
  net.add_place("exit");
  net.add_transition("tf", {"entry"}, mid);
  net.add_transition("tj", mid, {"exit"});
  return net;
}

std::string data_path(const std::string& file) {
  return std::string(PN2SC_TEST_DATA) + "/" + file;
}

}  // namespace fixtures
